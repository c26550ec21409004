"""Exact arithmetic in the Gaussian integers Z[i].

Division rounds half toward -infinity in each coordinate, which makes the
Euclidean algorithm, residue reduction and canonical residue systems
deterministic.
"""
from __future__ import annotations

import logging
import math
import re
from dataclasses import dataclass
from functools import lru_cache
from itertools import product

import numpy as np
from sympy import factorint

from .cache import cache_result
from .exceptions import NotInvertibleError, UndefinedError

logger = logging.getLogger(__name__)

_LITERAL = re.compile(
    r'^\s*(?:(?P<re>[+-]?\d+)(?:(?P<sign>[+-])(?P<im>\d*)i)?|(?P<pure>[+-]?\d*)i)\s*$'
)


@dataclass(frozen=True, slots=True)
class GaussianInt:
    re: int
    im: int = 0

    @classmethod
    def coerce(cls, value: GaussianInt | int | complex) -> GaussianInt:
        if isinstance(value, GaussianInt):
            return value
        if isinstance(value, (int, np.integer)):
            return cls(int(value), 0)
        if isinstance(value, complex):
            if value.real != int(value.real) or value.imag != int(value.imag):
                raise TypeError(f"{value!r} is not a Gaussian integer")
            return cls(int(value.real), int(value.imag))
        raise TypeError(f"cannot interpret {value!r} as a Gaussian integer")

    @classmethod
    def parse(cls, text: str) -> GaussianInt:
        match = _LITERAL.match(text.replace(' ', ''))
        if not match:
            raise ValueError(f"not a Gaussian integer literal: {text!r}")
        if match.group('pure') is not None:
            coeff = match.group('pure')
            if coeff in ('', '+'):
                return cls(0, 1)
            if coeff == '-':
                return cls(0, -1)
            return cls(0, int(coeff))
        real = int(match.group('re'))
        if match.group('sign') is None:
            return cls(real, 0)
        magnitude = int(match.group('im')) if match.group('im') else 1
        return cls(real, magnitude if match.group('sign') == '+' else -magnitude)

    def __str__(self) -> str:
        if self.im == 0:
            return str(self.re)
        imag = {1: 'i', -1: '-i'}.get(self.im, f"{self.im}i")
        if self.re == 0:
            return imag
        sign = '+' if self.im > 0 else '-'
        magnitude = '' if abs(self.im) == 1 else str(abs(self.im))
        return f"{self.re}{sign}{magnitude}i"

    def __complex__(self) -> complex:
        return complex(self.re, self.im)

    def __bool__(self) -> bool:
        return self.re != 0 or self.im != 0

    def __neg__(self) -> GaussianInt:
        return GaussianInt(-self.re, -self.im)

    def __add__(self, other) -> GaussianInt:
        other = GaussianInt.coerce(other)
        return GaussianInt(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other) -> GaussianInt:
        other = GaussianInt.coerce(other)
        return GaussianInt(self.re - other.re, self.im - other.im)

    def __rsub__(self, other) -> GaussianInt:
        return GaussianInt.coerce(other) - self

    def __mul__(self, other) -> GaussianInt:
        other = GaussianInt.coerce(other)
        return GaussianInt(self.re * other.re - self.im * other.im,
                           self.re * other.im + self.im * other.re)

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> GaussianInt:
        if exponent < 0:
            raise ValueError("negative powers are not Gaussian integers")
        result, base = ONE, self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def __floordiv__(self, other) -> GaussianInt:
        return divround(self, other)

    def __mod__(self, other) -> GaussianInt:
        return rem(self, other)

    def __divmod__(self, other) -> tuple[GaussianInt, GaussianInt]:
        quotient = divround(self, other)
        return quotient, self - quotient * GaussianInt.coerce(other)

    def norm(self) -> int:
        return self.re * self.re + self.im * self.im

    def conjugate(self) -> GaussianInt:
        return GaussianInt(self.re, -self.im)

    def is_unit(self) -> bool:
        return self.norm() == 1

    def canonical(self) -> GaussianInt:
        return canonical(self)

    @property
    def sort_key(self) -> tuple[int, int, int]:
        return (self.norm(), self.re, self.im)


ZERO = GaussianInt(0, 0)
ONE = GaussianInt(1, 0)
I = GaussianInt(0, 1)
UNITS = (ONE, I, -ONE, -I)
ONE_PLUS_I = GaussianInt(1, 1)


@dataclass(frozen=True)
class Factorization:
    unit: GaussianInt
    factors: tuple[tuple[GaussianInt, int], ...]

    def expand(self) -> GaussianInt:
        value = self.unit
        for prime, exponent in self.factors:
            value = value * prime ** exponent
        return value

    def primes(self) -> list[GaussianInt]:
        return [prime for prime, _ in self.factors]


def norm(z: GaussianInt) -> int:
    return GaussianInt.coerce(z).norm()


def canonical(z: GaussianInt) -> GaussianInt:
    """Rotate z by a unit into {re > 0, im >= 0}; zero maps to zero."""
    z = GaussianInt.coerce(z)
    if not z:
        return z
    for unit in UNITS:
        w = z * unit
        if w.re > 0 and w.im >= 0:
            return w
    raise AssertionError("unreachable: some rotation lands in the first quadrant")


def _round_half_down(numerator: int, denominator: int) -> int:
    # ceil(n/d - 1/2) for d > 0
    return -((denominator - 2 * numerator) // (2 * denominator))


def divround(a: GaussianInt, b: GaussianInt) -> GaussianInt:
    a, b = GaussianInt.coerce(a), GaussianInt.coerce(b)
    if not b:
        raise UndefinedError("division by zero")
    numerator = a * b.conjugate()
    n = b.norm()
    return GaussianInt(_round_half_down(numerator.re, n), _round_half_down(numerator.im, n))


def rem(a: GaussianInt, b: GaussianInt) -> GaussianInt:
    """Canonical remainder a - b * round(a / b)."""
    a, b = GaussianInt.coerce(a), GaussianInt.coerce(b)
    return a - b * divround(a, b)


def divides(d: GaussianInt, n: GaussianInt) -> bool:
    d, n = GaussianInt.coerce(d), GaussianInt.coerce(n)
    if not d:
        return not n
    return not rem(n, d)


def exact_div(n: GaussianInt, d: GaussianInt) -> GaussianInt:
    quotient, remainder = divmod(GaussianInt.coerce(n), d)
    if remainder:
        raise ValueError(f"{d} does not divide {n}")
    return quotient


def gcd(a: GaussianInt, b: GaussianInt) -> GaussianInt:
    a, b = GaussianInt.coerce(a), GaussianInt.coerce(b)
    if not a and not b:
        raise UndefinedError("gcd undefined")
    while b:
        a, b = b, rem(a, b)
    return canonical(a)


def xgcd(a: GaussianInt, b: GaussianInt) -> tuple[GaussianInt, GaussianInt, GaussianInt]:
    """Return (g, x, y) with a*x + b*y = g and g the canonical gcd."""
    a, b = GaussianInt.coerce(a), GaussianInt.coerce(b)
    if not a and not b:
        raise UndefinedError("gcd undefined")
    old_r, r = a, b
    old_x, x = ONE, ZERO
    old_y, y = ZERO, ONE
    while r:
        quotient = divround(old_r, r)
        old_r, r = r, old_r - quotient * r
        old_x, x = x, old_x - quotient * x
        old_y, y = y, old_y - quotient * y
    g = canonical(old_r)
    for unit in UNITS:
        if old_r * unit == g:
            return g, old_x * unit, old_y * unit
    raise AssertionError("unreachable: canonical form is a unit multiple")


def pow_mod(base: GaussianInt, exponent: int, modulus: GaussianInt) -> GaussianInt:
    base, modulus = GaussianInt.coerce(base), GaussianInt.coerce(modulus)
    result = rem(ONE, modulus)
    base = rem(base, modulus)
    while exponent:
        if exponent & 1:
            result = rem(result * base, modulus)
        base = rem(base * base, modulus)
        exponent >>= 1
    return result


@lru_cache(maxsize=4096)
def split_prime(p: int) -> GaussianInt:
    """Canonical Gaussian prime above a rational prime p = 1 (mod 4), by direct search."""
    a = 1
    while a * a < p:
        b2 = p - a * a
        b = math.isqrt(b2)
        if b * b == b2:
            return canonical(GaussianInt(a, b))
        a += 1
    raise ValueError(f"{p} is not a sum of two squares")


def factor(n: GaussianInt) -> Factorization:
    n = GaussianInt.coerce(n)
    if not n:
        raise UndefinedError("cannot factor zero")
    remaining = n
    factors: list[tuple[GaussianInt, int]] = []
    for p, _ in sorted(factorint(n.norm()).items()):
        if p == 2:
            candidates = [ONE_PLUS_I]
        elif p % 4 == 3:
            candidates = [GaussianInt(p, 0)]
        else:
            pi = split_prime(p)
            candidates = [pi, canonical(pi.conjugate())]
        for prime in candidates:
            exponent = 0
            while True:
                quotient, remainder = divmod(remaining, prime)
                if remainder:
                    break
                remaining = quotient
                exponent += 1
            if exponent:
                factors.append((prime, exponent))
    if not remaining.is_unit():
        raise AssertionError(f"factorization of {n} left cofactor {remaining}")
    factors.sort(key=lambda item: item[0].sort_key)
    return Factorization(unit=remaining, factors=tuple(factors))


def divisors(n: GaussianInt) -> list[GaussianInt]:
    """All divisors of n, associates included, sorted by (norm, re, im)."""
    fact = factor(n)
    ranges = [range(exponent + 1) for _, exponent in fact.factors]
    result: list[GaussianInt] = []
    for exponents in product(*ranges):
        d = ONE
        for (prime, _), k in zip(fact.factors, exponents):
            d = d * prime ** k
        result.extend(d * unit for unit in UNITS)
    result.sort(key=lambda z: z.sort_key)
    return result


def sigma_alpha(n: GaussianInt, alpha: complex) -> complex:
    """sigma_alpha(n) = (1/4) * sum over all divisors d of |d|^(2 alpha)."""
    if not GaussianInt.coerce(n):
        raise UndefinedError("sigma_alpha undefined at zero")
    total = sum(complex(d.norm()) ** alpha for d in divisors(n))
    return total / 4


def mobius(n: GaussianInt) -> int:
    fact = factor(n)
    if any(exponent > 1 for _, exponent in fact.factors):
        return 0
    return -1 if len(fact.factors) % 2 else 1


def complete_system(q: GaussianInt) -> list[GaussianInt]:
    """A complete residue system {x + iy : 0 <= x < N/g, 0 <= y < g}, g = gcd(re q, im q)."""
    q = GaussianInt.coerce(q)
    if not q:
        raise UndefinedError("residue system modulo zero")
    g = math.gcd(q.re, q.im)
    width = q.norm() // g
    return [GaussianInt(x, y) for y in range(g) for x in range(width)]


def complete_system_arrays(q: GaussianInt) -> tuple[np.ndarray, np.ndarray]:
    q = GaussianInt.coerce(q)
    if not q:
        raise UndefinedError("residue system modulo zero")
    g = math.gcd(q.re, q.im)
    width = q.norm() // g
    xs, ys = np.meshgrid(np.arange(width, dtype=np.int64), np.arange(g, dtype=np.int64))
    return xs.ravel(), ys.ravel()


def reduce_arrays(re: np.ndarray, im: np.ndarray, q: GaussianInt) -> tuple[np.ndarray, np.ndarray]:
    """Vectorized canonical remainder of re + i*im modulo q."""
    n = q.norm()
    num_re = re * q.re + im * q.im
    num_im = im * q.re - re * q.im
    quo_re = -((n - 2 * num_re) // (2 * n))
    quo_im = -((n - 2 * num_im) // (2 * n))
    return (re - (quo_re * q.re - quo_im * q.im),
            im - (quo_re * q.im + quo_im * q.re))


def divisible_arrays(re: np.ndarray, im: np.ndarray, q: GaussianInt) -> np.ndarray:
    """Boolean mask of entries re + i*im divisible by q."""
    n = q.norm()
    return ((re * q.re + im * q.im) % n == 0) & ((im * q.re - re * q.im) % n == 0)


@cache_result()
def residue_system(q: GaussianInt) -> list[GaussianInt]:
    q = GaussianInt.coerce(q)
    if not q:
        raise UndefinedError("residue system modulo zero")
    reduced = {rem(z, q) for z in complete_system(q)}
    if len(reduced) != q.norm():
        raise AssertionError(f"residue system modulo {q} has {len(reduced)} classes")
    return sorted(reduced, key=lambda z: z.sort_key)


def mod_inverse(a: GaussianInt, q: GaussianInt) -> GaussianInt:
    a, q = GaussianInt.coerce(a), GaussianInt.coerce(q)
    if not q:
        raise UndefinedError("inverse modulo zero")
    g, x, _ = xgcd(a, q) if a else (canonical(q), ZERO, ONE)
    if not g.is_unit():
        raise NotInvertibleError(f"{a} is not invertible modulo {q}")
    return rem(x, q)


def enumerate_arrays(nmax: int) -> tuple[np.ndarray, np.ndarray]:
    """Nonzero lattice points with norm <= nmax as sorted (re, im) arrays."""
    bound = math.isqrt(max(nmax, 0))
    axis = np.arange(-bound, bound + 1, dtype=np.int64)
    xs, ys = np.meshgrid(axis, axis, indexing='ij')
    xs, ys = xs.ravel(), ys.ravel()
    norms = xs * xs + ys * ys
    keep = (norms <= nmax) & (norms > 0)
    xs, ys, norms = xs[keep], ys[keep], norms[keep]
    order = np.lexsort((ys, xs, norms))
    return xs[order], ys[order]


def enumerate_by_norm(nmax: int) -> list[GaussianInt]:
    xs, ys = enumerate_arrays(nmax)
    logger.debug("enumerated %d lattice points with norm <= %d", xs.size, nmax)
    return [GaussianInt(int(x), int(y)) for x, y in zip(xs, ys)]


def canonical_by_norm(nmax: int) -> list[GaussianInt]:
    """One canonical representative per nonzero ideal of norm <= nmax."""
    return [z for z in enumerate_by_norm(nmax) if z.re > 0 and z.im >= 0]
