"""Zeta and L-functions attached to Q(i).

All 1/4 unit normalizations are kept: zeta_k(s) = (1/4) sum |n|^(-2s),
sigma_alpha(n) = (1/4) sum_{d | n} |d|^(2 alpha), L(s, chi_D) = (1/4) sum chi_D(n) |n|^(-2s).
"""
from __future__ import annotations

import cmath
import logging
import math
from dataclasses import dataclass
from functools import lru_cache

import mpmath
import numpy as np
from sympy import primerange

from .congruence import _count_square_roots, rho_count
from .gint import (
    GaussianInt, ONE, ONE_PLUS_I, canonical_by_norm, divisors, enumerate_arrays, exact_div,
    factor, mobius, pow_mod, rem, sigma_alpha,
)
from .exceptions import PoleError, UnsupportedDiscriminantError

logger = logging.getLogger(__name__)

_CHI_4 = [0, 1, 0, -1]
# incomplete-gamma terms below exp(-THETA_CUTOFF) are dropped
THETA_CUTOFF = 46.0


@dataclass(frozen=True)
class SeriesParams:
    s: complex
    truncation_norm: int = 100000
    tolerance: float = 1e-6

    def __post_init__(self):
        if self.truncation_norm < 1:
            raise ValueError("truncation_norm must be >= 1")
        if self.tolerance <= 0:
            raise ValueError("tolerance must be positive")


@dataclass(frozen=True)
class LerchSpec:
    s: complex
    m: int = 0
    xi: complex = 0j


def _c(value) -> complex:
    return complex(value)


# -- Dedekind zeta -------------------------------------------------------------

def dirichlet_beta(s: complex) -> complex:
    return _c(mpmath.dirichlet(s, _CHI_4))


def dedekind_zeta(s: complex) -> complex:
    """zeta_k(s) = zeta(s) * beta(s), continued to all s != 1."""
    s = complex(s)
    if abs(s - 1) < 1e-14:
        raise PoleError("pole at s=1")
    return _c(mpmath.zeta(s) * mpmath.dirichlet(s, _CHI_4))


def representation_counts(nmax: int) -> np.ndarray:
    """r2(k) for 0 <= k <= nmax."""
    xs, ys = enumerate_arrays(nmax)
    counts = np.bincount(xs * xs + ys * ys, minlength=nmax + 1)
    counts[0] = 1
    return counts


def dedekind_zeta_lattice(s: complex, truncation_norm: int) -> complex:
    counts = representation_counts(truncation_norm)[1:]
    k = np.arange(1, truncation_norm + 1, dtype=float)
    return complex(np.sum(counts * k ** (-complex(s)))) / 4


def dedekind_fe_residual(u: complex) -> float:
    """|zeta_k(2u) - pi^(4u-1) zeta_k(1-2u) Gamma(1-2u) / Gamma(2u)|."""
    u = complex(u)
    lhs = dedekind_zeta(2 * u)
    rhs = _c(mpmath.power(mpmath.pi, 4 * u - 1) * mpmath.gamma(1 - 2 * u) * mpmath.rgamma(2 * u)) \
        * dedekind_zeta(1 - 2 * u)
    return abs(lhs - rhs)


def dedekind_residue(eps: float = 1e-8) -> complex:
    s = 1 + eps
    return (s - 1) * dedekind_zeta(s)


# -- sigma series --------------------------------------------------------------

def _geometric(base: float, alpha: complex, count: int) -> complex:
    """sum_{j=0}^{count} base^(j alpha)."""
    return sum(cmath.exp(j * alpha * math.log(base)) for j in range(count + 1))


def ideal_sigma_square_sums(nmax: int, alpha: complex) -> np.ndarray:
    """S[k] = sum over ideals a with N(a) = k of sigma_alpha(a)^2, by a multiplicative sieve."""
    values = np.ones(nmax + 1, dtype=complex)
    values[0] = 0
    for p in primerange(2, nmax + 1):
        power, e = p, 1
        while power <= nmax:
            if p == 2:
                local = _geometric(2, alpha, e) ** 2
            elif p % 4 == 3:
                local = _geometric(p * p, alpha, e // 2) ** 2 if e % 2 == 0 else 0
            else:
                local = sum((_geometric(p, alpha, a) * _geometric(p, alpha, e - a)) ** 2
                            for a in range(e + 1))
            idx = np.arange(power, nmax + 1, power)
            idx = idx[(idx // power) % p != 0]
            values[idx] *= local
            power *= p
            e += 1
    return values


def sigma_series_lhs(s: complex, r: float, truncation_norm: int) -> complex:
    """sum over n != 0 with |n|^2 <= truncation_norm of sigma_{ir}(n)^2 / |n|^(2s + 2ir)."""
    sums = ideal_sigma_square_sums(truncation_norm, 1j * r)
    k = np.arange(1, truncation_norm + 1, dtype=float)
    return 4 * complex(np.sum(sums[1:] * k ** (-(complex(s) + 1j * r))))


def sigma_series_lhs_direct(s: complex, r: float, truncation_norm: int) -> complex:
    total = 0j
    for n in canonical_by_norm(truncation_norm):
        total += sigma_alpha(n, 1j * r) ** 2 * n.norm() ** (-(complex(s) + 1j * r))
    return 4 * total


def sigma_series_rhs(s: complex, r: float) -> complex:
    s = complex(s)
    return 4 * dedekind_zeta(s + 1j * r) * dedekind_zeta(s) ** 2 * dedekind_zeta(s - 1j * r) \
        / dedekind_zeta(2 * s)


def sigma_series_check(s: complex, r: float, truncation_norm: int) -> float:
    if complex(s).real <= 1:
        raise ValueError("sigma series needs Re(s) > 1")
    lhs = sigma_series_lhs(s, r, truncation_norm)
    rhs = sigma_series_rhs(s, r)
    logger.debug("sigma series s=%s r=%s: lhs=%s rhs=%s", s, r, lhs, rhs)
    return abs(lhs - rhs)


# -- Epstein-Lerch zeta --------------------------------------------------------

def _harmonic(v: np.ndarray, m: int) -> np.ndarray:
    return v ** m if m >= 0 else np.conj(v) ** (-m)


def _shifted_points(shift: complex, bound: float) -> np.ndarray:
    """Points v = n + shift, n in Z[i], 0 < |v|^2 <= bound."""
    radius = math.isqrt(int(bound)) + 2
    axis = np.arange(-radius, radius + 1)
    xs, ys = np.meshgrid(axis, axis, indexing='ij')
    v = (xs + 1j * ys).ravel() + shift
    mod2 = np.abs(v) ** 2
    return v[(mod2 <= bound) & (mod2 > 1e-24)]


def _is_lattice_point(z: complex) -> bool:
    return abs(z.real - round(z.real)) < 1e-14 and abs(z.imag - round(z.imag)) < 1e-14


def _theta_half(points: np.ndarray, m: int, sigma, phase_vec: complex, scale: float):
    """sum over points of P_m(v) e^(2 pi i <v, phase_vec>) (pi|v|^2)^(-sigma) Gamma(sigma, pi scale |v|^2)."""
    total = mpmath.mpc(0)
    if points.size == 0:
        return total
    weights = _harmonic(points, m) * np.exp(2j * math.pi * (points * np.conj(phase_vec)).real)
    for v, weight in zip(points, weights):
        x = math.pi * abs(v) ** 2
        total += complex(weight) * mpmath.power(x, -sigma) * mpmath.gammainc(sigma, scale * x)
    return total


def epstein_zeta(s: complex, m: int, shift: complex, twist: complex, split: float = 1.0) -> complex:
    """Z = sum over v in Z[i] + shift, v != 0, of (v/|v|)^m |v|^(-2s) e^(2 pi i Re(v conj(twist))).

    Continued to all s by splitting the theta integral at t = split.
    """
    s, shift, twist = complex(s), complex(shift), complex(twist)
    if split <= 0:
        raise ValueError("split must be positive")
    twist_integral = _is_lattice_point(twist)
    shift_integral = _is_lattice_point(shift)
    if m == 0 and twist_integral and abs(s - 1) < 1e-14:
        raise PoleError("pole at s=1")
    with mpmath.workdps(30):
        sigma = mpmath.mpc(s) + abs(m) / 2
        sigma_dual = 1 - mpmath.mpc(s) + abs(m) / 2
        direct = _theta_half(_shifted_points(shift, THETA_CUTOFF / (math.pi * split) + 1),
                             m, sigma, twist, split)
        dual = _theta_half(_shifted_points(-twist, THETA_CUTOFF * split / math.pi + 1),
                           m, sigma_dual, shift, 1 / split)
        phase = cmath.exp(2j * math.pi * (shift * twist.conjugate()).real)
        bracket = direct + phase * (-1j) ** abs(m) * dual
        if m == 0 and twist_integral:
            bracket += phase * mpmath.power(split, sigma - 1) / (sigma - 1)
        prefactor = mpmath.power(mpmath.pi, sigma) * mpmath.rgamma(sigma)
        value = prefactor * bracket
        if m == 0 and shift_integral:
            if abs(s) < 1e-14:
                value -= 1
            else:
                value -= prefactor * mpmath.power(split, sigma) / sigma
        return _c(value)


def lerch_zeta(spec: LerchSpec, split: float = 1.0) -> complex:
    """zeta_k(s; m, xi) = sum_{n + xi != 0} ((n + xi)/|n + xi|)^m |n + xi|^(-2s)."""
    return epstein_zeta(spec.s, spec.m, spec.xi, 0j, split)


def twisted_lattice_zeta(s: complex, m: int, xi: complex, split: float = 1.0) -> complex:
    """sum_{n != 0} (n/|n|)^m e[n conj(xi)] |n|^(-2s)."""
    return epstein_zeta(s, m, 0j, xi, split)


def lattice_series(s: complex, m: int, shift: complex, twist: complex, truncation_norm: int) -> complex:
    """Direct truncated sum of the Epstein-Lerch series; meaningful for Re(s) > 1."""
    v = _shifted_points(complex(shift), truncation_norm)
    mod = np.abs(v)
    terms = _harmonic(v / mod, m) * mod ** (-2 * complex(s))
    terms = terms * np.exp(2j * math.pi * (v * np.conj(complex(twist))).real)
    return complex(terms.sum())


def lerch_fe_rhs(s: complex, m: int, xi: complex, truncation_norm: int = 100000) -> complex:
    """(-i)^|m| pi^(2s-1) Gamma(1-s+|m|/2)/Gamma(s+|m|/2) * sum (n/|n|)^m e[n conj(xi)] |n|^(-2(1-s))."""
    s = complex(s)
    dual_s = 1 - s
    if dual_s.real >= 2.5:
        series = lattice_series(dual_s, m, 0j, xi, truncation_norm)
    else:
        series = twisted_lattice_zeta(dual_s, m, xi, split=0.5)
    factor_ = (-1j) ** abs(m) * _c(mpmath.power(mpmath.pi, 2 * s - 1)
                                   * mpmath.gamma(1 - s + abs(m) / 2)
                                   * mpmath.rgamma(s + abs(m) / 2))
    return factor_ * series


def lerch_fe_residual(s: complex, m: int, xi: complex, truncation_norm: int = 100000) -> float:
    """Relative residual of the Lerch functional equation; intended for Re(s) < 0."""
    lhs = lerch_zeta(LerchSpec(s=complex(s), m=m, xi=complex(xi)))
    rhs = lerch_fe_rhs(s, m, xi, truncation_norm)
    return abs(lhs - rhs) / max(1.0, abs(rhs))


def lerch_residue(xi: complex, eps: float = 1e-8) -> complex:
    s = 1 + eps
    return (s - 1) * lerch_zeta(LerchSpec(s=s, m=0, xi=complex(xi)))


# -- rho Dirichlet series and quadratic characters -----------------------------

@lru_cache(maxsize=65536)
def _local_root_count(prime: GaussianInt, exponent: int, n: GaussianInt) -> int:
    """#{x mod pi^e : x^2 = n (mod pi^e)} for an odd prime pi."""
    modulus = prime ** exponent
    return _count_square_roots(n, modulus, modulus)


def rho_multiplicative(q: GaussianInt, n: GaussianInt) -> int:
    """rho_q(n) assembled from its 2-part and odd prime-power parts (CRT)."""
    q, n = GaussianInt.coerce(q), GaussianInt.coerce(n)
    count = 1
    two_part = ONE
    for prime, exponent in factor(q).factors:
        if prime == ONE_PLUS_I:
            two_part = prime ** exponent
        else:
            count *= _local_root_count(prime, exponent, rem(n, prime ** exponent))
            if count == 0:
                return 0
    return count * rho_count(two_part, rem(n, two_part * 4))


def script_L(s: complex, n: GaussianInt, qmax_norm: int) -> complex:
    """(zeta_k(2s)/zeta_k(s)) * sum over q != 0, |q|^2 <= qmax_norm, of rho_q(n) / |q|^(2s)."""
    s = complex(s)
    if s.real <= 1:
        raise ValueError("script_L series needs Re(s) > 1")
    n = GaussianInt.coerce(n)
    total = 0j
    for q in canonical_by_norm(qmax_norm):
        count = rho_multiplicative(q, n)
        if count:
            total += count * q.norm() ** (-s)
    logger.debug("script_L s=%s n=%s qmax=%d partial=%s", s, n, qmax_norm, total)
    # four associates per ideal
    return dedekind_zeta(2 * s) / dedekind_zeta(s) * 4 * total


def _is_square_mod(value: GaussianInt, root_modulus: GaussianInt, modulus: GaussianInt) -> bool:
    return _count_square_roots(value, root_modulus, modulus) > 0


def _chi_prime(D: GaussianInt, prime: GaussianInt) -> int:
    if not rem(D, prime):
        return 0
    if prime == ONE_PLUS_I:
        # unramified above 2 iff D is a square mod 4; then split iff a square mod 4(1+i)
        if not _is_square_mod(D, GaussianInt(2), GaussianInt(4)):
            return 0
        return 1 if _is_square_mod(D, ONE_PLUS_I * 2, ONE_PLUS_I * 4) else -1
    residue = pow_mod(D, (prime.norm() - 1) // 2, prime)
    if residue == rem(ONE, prime):
        return 1
    if residue == rem(-ONE, prime):
        return -1
    raise AssertionError(f"Euler criterion gave {residue} modulo {prime}")


def chi_D(D: GaussianInt, n: GaussianInt) -> int:
    """Quadratic character of the extension k(sqrt D)/k, completely multiplicative in n."""
    D, n = GaussianInt.coerce(D), GaussianInt.coerce(n)
    value = 1
    for prime, exponent in factor(n).factors:
        local = _chi_prime(D, prime)
        if local == 0:
            return 0
        value *= local ** exponent
    return value


def T_l_D(s: complex, l: GaussianInt, D: GaussianInt) -> complex:
    """(1/4) sum_{d | l} chi_D(d) mu(d) |d|^(-2s) sigma_{1-2s}(l/d)."""
    s = complex(s)
    l = GaussianInt.coerce(l)
    total = 0j
    for d in divisors(l):
        mu = mobius(d)
        if mu == 0:
            continue
        chi = chi_D(D, d)
        if chi == 0:
            continue
        total += chi * mu * d.norm() ** (-s) * sigma_alpha(exact_div(l, d), 1 - 2 * s)
    return total / 4


def dirichlet_L_chi(s: complex, D: GaussianInt, truncation_norm: int) -> complex:
    """L(s, chi_D) = (1/4) sum over n != 0 of chi_D(n) |n|^(-2s), truncated."""
    s = complex(s)
    total = 0j
    for n in canonical_by_norm(truncation_norm):
        chi = chi_D(D, n)
        if chi:
            total += chi * n.norm() ** (-s)
    return total


def _is_decomposition_panel(n: GaussianInt) -> bool:
    if not n or n.is_unit():
        return False
    if not rem(n, ONE_PLUS_I):
        return False
    if mobius(n) == 0:
        return False
    return not rem(n - 1, GaussianInt(4))


def decomposition_check(s: complex, n: GaussianInt, qmax_norm: int = 2000) -> float:
    """|script_L(s; n) - 4 T_1^(D) L(s, chi_D)| with D = n, l = 1."""
    n = GaussianInt.coerce(n)
    if not _is_decomposition_panel(n):
        raise UnsupportedDiscriminantError("D-extraction not supported")
    lhs = script_L(s, n, qmax_norm)
    rhs = 4 * T_l_D(s, ONE, n) * dirichlet_L_chi(s, n, qmax_norm)
    logger.debug("decomposition n=%s: L=%s rhs=%s", n, lhs, rhs)
    return abs(lhs - rhs)


def subconvexity_constants(alpha: float = 7 / 64) -> dict[str, float]:
    """theta = A = 1/2 - (1 - 2 alpha)/8 (plus epsilon), with alpha the Ramanujan-type exponent."""
    exponent = 0.5 - (1 - 2 * alpha) / 8
    return {'alpha': alpha, 'theta': exponent, 'A': exponent}
