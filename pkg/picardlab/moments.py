"""Weight functions and the integral transforms of the first-moment computation.

The test function is h(K,N,T,X;r) = X^{ir} q_N(r) e^{-(r-K)^2/G^2} + (r -> -r),
smoothed spectral cutoffs use omega_T, and the rest of the module evaluates
the transforms built from h: psi, its Mellin transform, h*, and the
integrals I(n, tau, s) in two hypergeometric representations.

All r-integrals run over fixed Gauss-Legendre panels on [-K-6G, K+6G];
panel counts are even so r = 0 is never a node.
"""
from __future__ import annotations

import cmath
import logging
import math
from dataclasses import dataclass
from typing import Literal

import numpy as np
from numpy.polynomial import Polynomial
from pydantic import BaseModel, ConfigDict, Field
from scipy import special

from .exceptions import RegimeError, UndefinedError, WeightTooWideError
from .gint import GaussianInt
from .quadrature import gl_panels, graded_edges, symmetric_edges, uniform_edges
from .specfun import gamma_c, hyp2f1, scaled_bessel_K_grid, bessel_K_imag_grid

logger = logging.getLogger(__name__)

# beyond this window cosh(pi r) h(r) is no longer resolved in double precision
MAX_R_WINDOW = 30.0
Z_MAX = 40.0


class WeightSpec(BaseModel):
    """Parameters of h(K,N,T,X;r) and omega_T, restricted to the desk-scale box."""
    model_config = ConfigDict(frozen=True)

    K: float = Field(gt=0, le=20)
    N: int = Field(default=2, ge=1, le=3)
    T: float = Field(default=1.0, gt=0)
    G: float = Field(default=1.0, gt=0)
    X: float = Field(default=1.0, ge=1)

    @property
    def r_window(self) -> float:
        return self.K + 6 * self.G

    def __call__(self, r):
        return h_weight(r, self)

    def r_rule(self, nodes: int = 10) -> tuple[np.ndarray, np.ndarray]:
        if self.r_window > MAX_R_WINDOW:
            raise WeightTooWideError(f"weight too wide: K + 6G = {self.r_window:g}")
        width = min(self.G / 2, 1.0 / (1.0 + abs(math.log(self.X))))
        return gl_panels(symmetric_edges(self.r_window, width), nodes)


@dataclass(frozen=True)
class XPlusMinus:
    n: GaussianInt
    tau: float
    c_plus: float
    c_minus: float
    x_plus: float
    x_minus: float

    @property
    def theta(self) -> float:
        return math.atan2(self.n.im, self.n.re)


# -- weights -------------------------------------------------------------------

def omega_T(r, T: float, G: float):
    """(1/(G sqrt(pi))) int_T^{2T} exp(-(r-K)^2/G^2) dK."""
    if T <= 0 or G <= 0:
        raise ValueError("omega_T needs T, G > 0")
    r = np.asarray(r, dtype=float)
    value = 0.5 * (special.erf((2 * T - r) / G) - special.erf((T - r) / G))
    return value.item() if value.ndim == 0 else value


def q_N(r, N: int):
    """prod_{k<=N} (r^2 + (k-1/2)^2)(r^2 + k^2) / (r^2 + 100 N^2)^(2N)."""
    if N < 1:
        raise ValueError("q_N needs N >= 1")
    r2 = np.asarray(r, dtype=complex) ** 2
    value = np.ones_like(r2)
    for k in range(1, N + 1):
        value = value * (r2 + (k - 0.5) ** 2) * (r2 + k * k) / (r2 + 100 * N * N) ** 2
    return value.item() if value.ndim == 0 else value


def h_weight(r, w: WeightSpec):
    r = np.asarray(r, dtype=complex)
    oscillation = np.exp(1j * r * math.log(w.X))
    value = q_N(r, w.N) * (oscillation * np.exp(-((r - w.K) / w.G) ** 2)
                           + np.exp(-((r + w.K) / w.G) ** 2) / oscillation)
    return value.item() if value.ndim == 0 else value


# -- Gaussian integrals --------------------------------------------------------

def hermite_P(n: int) -> Polynomial:
    """P_n with int x^n exp(-x^2 + q x) dx = P_n(q) exp(q^2/4)."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    poly = Polynomial([math.sqrt(math.pi)])
    half_q = Polynomial([0.0, 0.5])
    for _ in range(n):
        poly = half_q * poly + poly.deriv()
    return poly


def gaussian_integral_oracle(p: complex, q: complex, n: int = 0) -> complex:
    """int x^n exp(-p^2 x^2 + q x) dx over the real line, in closed form."""
    p, q = complex(p), complex(q)
    if (p * p).real <= 0:
        raise RegimeError("regime: Gaussian integral needs Re(p^2) > 0")
    if p.real < 0:
        p = -p
    return complex(p ** (-n - 1) * hermite_P(n)(q / p) * cmath.exp(q * q / (4 * p * p)))


def gaussian_integral_numeric(p: complex, q: complex, n: int = 0, nodes: int = 20) -> complex:
    p, q = complex(p), complex(q)
    a = (p * p).real
    if a <= 0:
        raise RegimeError("regime: Gaussian integral needs Re(p^2) > 0")
    center = q.real / (2 * a)
    half = 12.0 / math.sqrt(a) + 2.0 * abs(center) / 3
    x, wx = gl_panels(uniform_edges(center - half, center + half, 0.5 / math.sqrt(a)), nodes)
    return complex(np.dot(x ** n * np.exp(-p * p * x * x + q * x), wx))


# -- psi and its Mellin transform ----------------------------------------------

def _check_tau(tau: float) -> None:
    if not 0 < tau < math.pi / 2:
        raise ValueError("tau must lie in (0, pi/2)")


def psi_values(m: int, tau: float, zs, h: WeightSpec, nodes: int = 10) -> np.ndarray:
    """psi(m, tau; z) = (1/2) int r^2 h(r) cosh(pi r) J_{2m}(2z sin tau) K_{2ir}(2z cos tau) dr."""
    _check_tau(tau)
    zs = np.atleast_1d(np.asarray(zs, dtype=float))
    if m < 0 or np.any(zs <= 0):
        raise ValueError("psi needs m >= 0 and z > 0")
    rs, wr = h.r_rule(nodes)
    weights = rs ** 2 * h_weight(rs, h) * wr
    kernel = scaled_bessel_K_grid(rs, 2 * zs * math.cos(tau))
    return 0.5 * special.jv(2 * m, 2 * zs * math.sin(tau)) * (weights @ kernel)


def psi(m: int, tau: float, z: float, h: WeightSpec) -> complex:
    return complex(psi_values(m, tau, [z], h)[0])


def g_mellin(m: int, r: float, tau: float, s: complex) -> complex:
    """int_0^inf J_{2m}(2z sin tau) K_{2ir}(2z cos tau) z^(s-1) dz, for Re(2m + s) > 0."""
    _check_tau(tau)
    s = complex(s)
    if (2 * m + s).real <= 0:
        raise RegimeError("regime: Mellin transform needs Re(2m + s) > 0")
    a = m + s / 2
    factor = math.sin(tau) ** (2 * m) / (4 * math.cos(tau) ** (2 * m) * math.cos(tau) ** s)
    gammas = gamma_c(a + 1j * r) * gamma_c(a - 1j * r) / math.factorial(2 * m)
    return factor * gammas * hyp2f1(a + 1j * r, a - 1j * r, 1 + 2 * m, -math.tan(tau) ** 2)


def _z_rule(nodes: int = 20) -> tuple[np.ndarray, np.ndarray]:
    edges = np.union1d(uniform_edges(0.0, Z_MAX, 1.0), graded_edges(0.0, 1.0, 0.5, 1e-10, toward='a'))
    return gl_panels(edges, nodes)


def g_mellin_numeric(m: int, r: float, tau: float, s: complex) -> complex:
    _check_tau(tau)
    z, wz = _z_rule()
    kernel = bessel_K_imag_grid(np.array([float(r)]), 2 * z * math.cos(tau))[0]
    integrand = special.jv(2 * m, 2 * z * math.sin(tau)) * kernel * z ** (complex(s) - 1)
    return complex(np.dot(integrand, wz))


def psi_mellin_numeric(m: int, tau: float, w: complex, h: WeightSpec) -> complex:
    z, wz = _z_rule()
    return complex(np.dot(psi_values(m, tau, z, h) * z ** (complex(w) - 1), wz))


def psi_mellin_closed(m: int, tau: float, w: complex, h: WeightSpec) -> complex:
    """(1/2) int r^2 h(r) cosh(pi r) g_mellin(m, r, tau, w) dr."""
    rs, wr = h.r_rule()
    values = [g_mellin(m, r, tau, w) for r in rs]
    return complex(0.5 * np.sum(rs ** 2 * h_weight(rs, h) * np.cosh(np.pi * rs) * values * wr))


# -- h* ------------------------------------------------------------------------

def _contour_shift(a_re: float, N: int, shift: float | None) -> float:
    """Depth C of the contour Im r = -C for the h*-type r-integrals.

    The r-integrand has poles at r = i(a + k), k >= 0, from Gamma(a + ir), and
    at r = -ij from coth(pi r); the latter are cancelled by the zeros of h for
    j <= N, so any C < N + 1 with a > -C keeps the value analytic in s.
    """
    if shift is None:
        shift = 0.0 if a_re > 0.25 else N + 0.75
    if shift < 0 or shift >= N + 1 or (shift > 0 and shift == int(shift)):
        raise RegimeError(f"regime: contour depth {shift} must lie in [0, {N + 1}) off the integers")
    if a_re <= 0.25 - shift:
        raise RegimeError(f"regime: Re(m + s/2) = {a_re:g} is below the contour Im r = {-shift:g}")
    return shift


def _coth(r):
    return 1.0 / np.tanh(np.pi * r)


def h_star(m: int, tau: float, s: complex, h: WeightSpec, shift: float | None = None) -> complex:
    """h*(m, tau; s) = pi i (-1)^m tan^{2m}(tau)/8 int r^2 h(r) coth(pi r)
    Gamma(m + s/2 + ir) / (Gamma(1 - m - s/2 + ir) (2m)!) F(m + s/2 + ir, m + s/2 - ir; 1 + 2m; -tan^2 tau) dr,
    along Im r = -shift; continues in s down to Re(s) > -2m - 2N - 1.5.
    """
    _check_tau(tau)
    s = complex(s)
    a = m + s / 2
    depth = _contour_shift(a.real, h.N, shift)
    rs, wr = h.r_rule()
    path = rs - 1j * depth
    weight = path ** 2 * h_weight(path, h) * _coth(path)
    total = 0j
    for r, value, dw in zip(path, weight, wr):
        ratio = complex(special.gamma(a + 1j * r) * special.rgamma(1 - a + 1j * r))
        total += value * dw * ratio * hyp2f1(a + 1j * r, a - 1j * r, 1 + 2 * m, -math.tan(tau) ** 2)
    prefactor = 1j * math.pi * (-1) ** m * math.tan(tau) ** (2 * m) / (8 * math.factorial(2 * m))
    logger.debug("h* m=%d s=%s on Im r=%g with %d nodes", m, s, -depth, rs.size)
    return prefactor * total


def h_star_alt(m: int, tau: float, s: complex, h: WeightSpec) -> complex:
    """Cosine form of h*, valid on the real r-line for Re(m + s/2) > 0."""
    _check_tau(tau)
    s = complex(s)
    a = m + s / 2
    if a.real <= 0:
        raise RegimeError("regime: cosine form needs Re(m + s/2) > 0")
    rs, wr = h.r_rule()
    weight = rs ** 2 * h_weight(rs, h) * np.cosh(np.pi * rs) * wr
    total = sum(
        value * gamma_c(a + 1j * r) * gamma_c(a - 1j * r)
        * hyp2f1(a + 1j * r, a - 1j * r, 1 + 2 * m, -math.tan(tau) ** 2)
        for r, value in zip(rs, weight)
    )
    return cmath.cos(math.pi * s / 2) * math.tan(tau) ** (2 * m) / (8 * math.factorial(2 * m)) * total


def h_star_simple(s: complex, h: WeightSpec, shift: float = 0.0) -> complex:
    """int r^2 h(r) coth(pi r) Gamma(s + ir) / Gamma(1 - s + ir) dr along Im r = -shift."""
    s = complex(s)
    depth = _contour_shift(s.real, h.N, shift)
    rs, wr = h.r_rule()
    path = rs - 1j * depth
    ratio = special.gamma(s + 1j * path) * special.rgamma(1 - s + 1j * path)
    return complex(np.sum(path ** 2 * h_weight(path, h) * _coth(path) * ratio * wr))


def psi_from_mellin(m: int, tau: float, z: float, h: WeightSpec, a: float = -0.5,
                    t_max: float = 30.0, step: float = 1.0) -> complex:
    """psi(m, tau; z) = (1/2 pi i) int_(a) h*(m, tau; s) / cos(pi s/2) (z cos tau)^(-s) ds."""
    if not -2 * m - 2 * h.N - 1.5 < a < 0:
        raise RegimeError("regime: inversion line must satisfy -2m-2N-1.5 < a < 0")
    t, wt = gl_panels(symmetric_edges(t_max, step), 10)
    total = 0j
    for ti, wi in zip(t, wt):
        s = complex(a, ti)
        total += wi * h_star(m, tau, s, h) / cmath.cos(math.pi * s / 2) * (z * math.cos(tau)) ** (-s)
    return complex(total / (2 * math.pi))


# -- I(n, tau, s) --------------------------------------------------------------

def x_pm(n: GaussianInt, tau: float) -> XPlusMinus:
    """c_pm = (1 pm 4 sin(tau) cos(theta)/|n| + 4 sin^2(tau)/|n|^2)^(1/2), x_pm = (|n| c_pm)^2 / (2 cos tau)^2."""
    n = GaussianInt.coerce(n)
    _check_tau(tau)
    if not n:
        raise UndefinedError("x_pm undefined at n = 0")
    modulus = math.sqrt(n.norm())
    cos_theta = n.re / modulus
    sin_tau = math.sin(tau)
    c = [math.sqrt(max(1 + sign * 4 * sin_tau * cos_theta / modulus + 4 * sin_tau ** 2 / modulus ** 2, 0.0))
         for sign in (1, -1)]
    x = [(modulus * value) ** 2 / (2 * math.cos(tau)) ** 2 for value in c]
    return XPlusMinus(n=n, tau=tau, c_plus=c[0], c_minus=c[1], x_plus=x[0], x_minus=x[1])


def _rep1(x: float, tau: float, s: complex, rs, weight) -> complex:
    if x > 50:
        raise RegimeError(f"regime: x = {x:g} > 50 for the first representation")
    b = 1 - s
    total = sum(
        value * gamma_c(b - 1j * r) * gamma_c(b + 1j * r) * hyp2f1(b + 1j * r, b - 1j * r, 1, -x)
        for r, value in zip(rs, weight)
    )
    return total / (16 * math.cos(tau) ** (2 - 2 * s))


def _rep2(x: float, tau: float, s: complex, rs, weight) -> complex:
    if x <= 0:
        raise RegimeError("regime: second representation needs x > 0")
    b = 1 - s
    total = sum(
        value * x ** (-1j * r) * gamma_c(b + 1j * r) * gamma_c(-2j * r) * special.rgamma(s - 1j * r)
        * hyp2f1(b + 1j * r, b + 1j * r, 1 + 2j * r, -1 / x)
        for r, value in zip(rs, weight)
    )
    return total / (8 * (x * math.cos(tau) ** 2) ** b)


def I_weight(n: GaussianInt, tau: float, s: complex, h: WeightSpec, rep: Literal[1, 2] = 2) -> complex:
    """I(n, tau, s) summed over the two branches x_+ and x_-.

    rep 1 integrates Gamma(1-s-ir) Gamma(1-s+ir) F(1-s+ir, 1-s-ir; 1; -x) and
    needs x <= 50; rep 2 is its z -> 1/z connection and only needs x > 0.
    """
    s = complex(s)
    if s.real >= 1:
        raise RegimeError("regime: I(n, tau, s) needs Re(s) < 1")
    xs = x_pm(n, tau)
    rs, wr = h.r_rule()
    weight = rs ** 2 * h_weight(rs, h) * np.cosh(np.pi * rs) * wr
    branch = _rep1 if rep == 1 else _rep2
    logger.debug("I(n=%s, tau=%g, s=%s) rep %d: x+=%g x-=%g", n, tau, s, rep, xs.x_plus, xs.x_minus)
    return complex(branch(xs.x_plus, tau, s, rs, weight) + branch(xs.x_minus, tau, s, rs, weight))


def I_zero(tau: float, s: complex, h: WeightSpec, form: Literal['hstar', 'direct'] = 'hstar') -> complex:
    """I(0, tau, s) = -h*(0, tau; 2 - 2s) / (2 cos^{2-2s}(tau) cos(pi s))."""
    _check_tau(tau)
    s = complex(s)
    if form == 'hstar':
        return -h_star(0, tau, 2 - 2 * s, h) / (2 * math.cos(tau) ** (2 - 2 * s) * cmath.cos(math.pi * s))
    rs, wr = h.r_rule()
    weight = rs ** 2 * h_weight(rs, h) * np.cosh(np.pi * rs) * wr
    return complex(_rep1(math.tan(tau) ** 2, tau, s, rs, weight))


def decay_slope(ns, values) -> float:
    """Least-squares slope of log|value| against log|n|."""
    ns = np.abs(np.asarray(ns, dtype=complex))
    values = np.abs(np.asarray(values, dtype=complex))
    return float(np.polyfit(np.log(ns), np.log(values), 1)[0])
