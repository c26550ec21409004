"""Quadratic congruence counts rho_q(n), by exhaustion over residues."""
from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np

from .gint import (
    GaussianInt, complete_system_arrays, divisible_arrays, residue_system,
)
from .exceptions import UndefinedError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class RhoValue:
    q: GaussianInt
    n: GaussianInt
    count: int


def _count_square_roots(n: GaussianInt, root_modulus: GaussianInt, modulus: GaussianInt) -> int:
    """#{x mod root_modulus : x^2 = n (mod modulus)}."""
    xs, ys = complete_system_arrays(root_modulus)
    sq_re = xs * xs - ys * ys - n.re
    sq_im = 2 * xs * ys - n.im
    return int(np.count_nonzero(divisible_arrays(sq_re, sq_im, modulus)))


def rho(q: GaussianInt, n: GaussianInt) -> RhoValue:
    """rho_q(n) = #{x mod 2q : x^2 = n (mod 4q)}."""
    q, n = GaussianInt.coerce(q), GaussianInt.coerce(n)
    if not q:
        raise UndefinedError("rho undefined for q = 0")
    count = _count_square_roots(n, q * 2, q * 4)
    return RhoValue(q=q, n=n, count=count)


def rho_count(q: GaussianInt, n: GaussianInt) -> int:
    return rho(q, n).count


def trace_congruence_count(n: GaussianInt, q: GaussianInt) -> int:
    """#{a mod q : a^2 + a conj(n) + 1 = 0 (mod q)}."""
    n, q = GaussianInt.coerce(n), GaussianInt.coerce(q)
    if not q:
        raise UndefinedError("congruence modulo zero")
    nb = n.conjugate()
    count = 0
    for a in residue_system(q):
        value = a * a + a * nb + 1
        if not value % q:
            count += 1
    return count
