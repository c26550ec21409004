"""Exponential sums over Z[i]: e[x], linear sums, Kloosterman sums."""
from __future__ import annotations

import cmath
import logging
import math
from dataclasses import dataclass

import numpy as np

from .gint import (
    GaussianInt, canonical, divisors, exact_div, gcd, mobius, mod_inverse, residue_system,
    sigma_alpha,
)
from .exceptions import UndefinedError

logger = logging.getLogger(__name__)

TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class KloostermanResult:
    value: complex
    modulus_norm: int
    weil_bound: float

    @property
    def within_weil_bound(self) -> bool:
        return abs(self.value) <= self.weil_bound + 1e-9


def e_bracket(x: complex) -> complex:
    """e[x] = exp(2 pi i Re x)."""
    return cmath.exp(1j * TWO_PI * complex(x).real)


def _phases(numerators: list[GaussianInt], q: GaussianInt) -> np.ndarray:
    """Re(numerator / q) for a batch of Gaussian numerators."""
    n = q.norm()
    return np.array([(z.re * q.re + z.im * q.im) / n for z in numerators], dtype=float)


def linear_sum(n: GaussianInt, q: GaussianInt) -> complex:
    """Sum over a mod q of e[a n / q]."""
    n, q = GaussianInt.coerce(n), GaussianInt.coerce(q)
    if not q:
        raise UndefinedError("linear sum modulo zero")
    phases = _phases([a * n for a in residue_system(q)], q)
    return complex(np.exp(1j * TWO_PI * phases).sum())


def weil_bound(m: GaussianInt, n: GaussianInt, c: GaussianInt) -> float:
    common = gcd(gcd(m, n) if (m or n) else c, c)
    divisor_count = sigma_alpha(c, 0).real
    return math.sqrt(c.norm()) * divisor_count * math.sqrt(common.norm())


def kloosterman(m: GaussianInt, n: GaussianInt, c: GaussianInt,
                conjugate_pairing: bool = False) -> KloostermanResult:
    """S(m, n; c) = sum over a mod c, (a, c) = 1, of e[(m a + n a*) / c].

    With conjugate_pairing the phase is Re(m conj(a/c)) + Re(n conj(a*/c)),
    which equals S(conj m, conj n; c).
    """
    m, n, c = GaussianInt.coerce(m), GaussianInt.coerce(n), GaussianInt.coerce(c)
    if not c:
        raise UndefinedError("Kloosterman sum modulo zero")
    bound = weil_bound(m, n, c)
    if conjugate_pairing:
        m, n = m.conjugate(), n.conjugate()
    numerators = []
    for a in residue_system(c):
        if gcd(a, c).is_unit():
            numerators.append(m * a + n * mod_inverse(a, c))
    phases = _phases(numerators, c)
    value = complex(np.exp(1j * TWO_PI * phases).sum())
    return KloostermanResult(value=value, modulus_norm=c.norm(), weil_bound=bound)


def ramanujan_sum(n: GaussianInt, q: GaussianInt) -> complex:
    """S(n, 0; q), the Gaussian Ramanujan sum."""
    return kloosterman(n, GaussianInt(0, 0), q).value


def ramanujan_sum_mobius(n: GaussianInt, q: GaussianInt) -> int:
    """Closed form: sum over ideals d | (n, q) of N(d) mu(q/d)."""
    n, q = GaussianInt.coerce(n), GaussianInt.coerce(q)
    total = 0
    for d in divisors(gcd(n, q)):
        if d == canonical(d):
            total += d.norm() * mobius(exact_div(q, d))
    return total


def twisted_csum(n: GaussianInt, q: GaussianInt) -> complex:
    """Sum over c mod q of S(c, c; q) e[n conj(c/q)]."""
    n, q = GaussianInt.coerce(n), GaussianInt.coerce(q)
    if not q:
        raise UndefinedError("twisted sum modulo zero")
    residues = residue_system(q)
    traces = [a + mod_inverse(a, q) for a in residues if gcd(a, q).is_unit()]
    tr_re = np.array([t.re for t in traces], dtype=np.int64)
    tr_im = np.array([t.im for t in traces], dtype=np.int64)
    c_re = np.array([c.re for c in residues], dtype=np.int64)[:, None]
    c_im = np.array([c.im for c in residues], dtype=np.int64)[:, None]
    # e[n conj(c/q)] = e[conj(n) c / q]
    nb = n.conjugate()
    num_re = c_re * (tr_re + nb.re) - c_im * (tr_im + nb.im)
    num_im = c_re * (tr_im + nb.im) + c_im * (tr_re + nb.re)
    phases = (num_re * q.re + num_im * q.im) / q.norm()
    logger.debug("twisted sum n=%s q=%s over %d residues", n, q, len(residues))
    return complex(np.exp(1j * TWO_PI * phases).sum())
