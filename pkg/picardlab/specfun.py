"""Special functions: complex Gamma, J- and K-Bessel, Gauss 2F1, Motohashi's K-kernel."""
from __future__ import annotations

import cmath
import logging
import math
from functools import lru_cache
from typing import Callable

import mpmath
import numpy as np
from scipy import special

from .exceptions import PoleError, RegimeError, UndefinedError
from .quadrature import QuadratureSpec, gl_panels, graded_edges, symmetric_edges, tanh_sinh_gaps

logger = logging.getLogger(__name__)

# above this |r| the cosh(pi r) K_{2ir} product loses too many digits in double precision
SCALED_K_NUMPY_LIMIT = 6.0
# exp(-K_CUTOFF) is treated as zero in the cosh-integral
K_CUTOFF = 46.0
SERIES_RADIUS = 0.9


# -- Gamma ---------------------------------------------------------------------

def _is_pole(z: complex) -> bool:
    return z.imag == 0 and z.real <= 0 and z.real == math.floor(z.real)


def gamma_c(z: complex) -> complex:
    z = complex(z)
    if _is_pole(z):
        raise PoleError(f"Gamma has a pole at {z.real:g}")
    return complex(special.gamma(z))


def stirling_modulus(sigma: float, t: float) -> float:
    """sqrt(2 pi) |t|^(sigma - 1/2) exp(-pi |t| / 2)."""
    t = abs(t)
    return math.sqrt(2 * math.pi) * t ** (sigma - 0.5) * math.exp(-math.pi * t / 2)


def stirling_ratio(z: complex) -> float:
    """|Gamma(z)| over its Stirling modulus; tends to 1 as |Im z| grows."""
    z = complex(z)
    log_modulus = special.loggamma(z).real
    log_stirling = 0.5 * math.log(2 * math.pi) + (z.real - 0.5) * math.log(abs(z.imag)) \
        - math.pi * abs(z.imag) / 2
    return math.exp(log_modulus - log_stirling)


def gamma_product_check(r: float) -> float:
    """|Gamma(1/2 + ir) Gamma(1/2 - ir) - pi / cosh(pi r)|."""
    value = gamma_c(0.5 + 1j * r) * gamma_c(0.5 - 1j * r)
    return abs(value - math.pi / math.cosh(math.pi * r))


# -- Bessel --------------------------------------------------------------------

def bessel_J(order: int, x: float) -> float:
    if x < 0:
        raise ValueError("bessel_J expects x >= 0")
    return float(special.jv(order, x))


def _t_rule(x_min: float) -> tuple[np.ndarray, np.ndarray]:
    t_max = math.acosh(1.0 + K_CUTOFF / x_min)
    fine = np.arange(0.0, min(t_max, 2.0) + 1e-12, 0.25)
    coarse = np.arange(fine[-1] + 0.5, t_max + 0.5, 0.5) if t_max > fine[-1] else np.array([])
    edges = np.concatenate((fine, coarse))
    if edges.size < 2:
        edges = np.array([0.0, t_max])
    return gl_panels(edges)


def bessel_K_imag_grid(rs: np.ndarray, xs: np.ndarray) -> np.ndarray:
    """K_{2ir}(x) on a (len(rs), len(xs)) grid from the cosh-integral."""
    t, w = _t_rule(float(xs.min()))
    decay = np.exp(-np.outer(xs, np.cosh(t))) * w
    return (decay @ np.cos(2.0 * np.outer(t, rs))).T


@lru_cache(maxsize=1 << 16)
def _scaled_k_mp(r: float, x: float) -> float:
    with mpmath.workdps(30 + int(math.pi * abs(r) / math.log(10))):
        value = mpmath.cosh(mpmath.pi * r) * mpmath.besselk(2j * r, x)
        return float(mpmath.re(value))


def bessel_K_imag(r: float, x: float) -> float:
    """K_{2ir}(x) = int_0^inf exp(-x cosh t) cos(2 r t) dt."""
    if x <= 0:
        raise ValueError("bessel_K_imag expects x > 0")
    return float(bessel_K_imag_grid(np.array([float(r)]), np.array([float(x)]))[0, 0])


def scaled_bessel_K_grid(rs, xs) -> np.ndarray:
    """cosh(pi r) K_{2ir}(x) on a (len(rs), len(xs)) grid."""
    rs = np.atleast_1d(np.asarray(rs, dtype=float))
    xs = np.atleast_1d(np.asarray(xs, dtype=float))
    if np.any(xs <= 0):
        raise ValueError("scaled K expects x > 0")
    out = np.empty((rs.size, xs.size))
    small = np.abs(rs) <= SCALED_K_NUMPY_LIMIT
    if small.any():
        out[small] = bessel_K_imag_grid(rs[small], xs) * np.cosh(np.pi * rs[small])[:, None]
    for i in np.flatnonzero(~small):
        out[i] = [_scaled_k_mp(float(rs[i]), float(x)) for x in xs]
    return out


def scaled_bessel_K_imag(r: float, x: float) -> float:
    return float(scaled_bessel_K_grid([r], [x])[0, 0])


# -- Gauss hypergeometric function ---------------------------------------------

def _is_integer(value) -> bool:
    value = complex(value)
    return value.imag == 0 and value.real == round(value.real)


def hyp2f1_regime(a, b, c, z) -> str:
    """Pick the evaluation route: 'series', 'pfaff' or 'inverse'."""
    z = complex(z)
    if _is_integer(c) and complex(c).real <= 0:
        raise RegimeError(f"regime: c={c} is a nonpositive integer")
    if z.imag == 0 and z.real >= 1:
        raise RegimeError("regime: z on the branch cut [1, inf)")
    if abs(z) < SERIES_RADIUS:
        return 'series'
    if abs(z / (z - 1)) < SERIES_RADIUS:
        return 'pfaff'
    if abs(1 / z) < SERIES_RADIUS and not _is_integer(complex(a) - complex(b)):
        return 'inverse'
    raise RegimeError(f"regime: no convergent transformation for z={z}, a-b={complex(a) - complex(b)}")


def _series(a, b, c, z):
    return mpmath.hyper([a, b], [c], z)


def hyp2f1(a, b, c, z) -> complex:
    """2F1(a, b; c; z) by the Gauss series, a Pfaff transformation or the z -> 1/z connection."""
    regime = hyp2f1_regime(a, b, c, z)
    size = abs(complex(a)) + abs(complex(b)) + abs(complex(c))
    with mpmath.workdps(25 + int(size)):
        a, b, c, z = (mpmath.mpc(complex(v)) for v in (a, b, c, z))
        if regime == 'series':
            value = _series(a, b, c, z)
        elif regime == 'pfaff':
            value = (1 - z) ** (-a) * _series(a, c - b, c, z / (z - 1))
        else:
            value = mpmath.gamma(c) * (
                mpmath.gamma(b - a) * mpmath.rgamma(b) * mpmath.rgamma(c - a)
                * (-z) ** (-a) * _series(a, a - c + 1, a - b + 1, 1 / z)
                + mpmath.gamma(a - b) * mpmath.rgamma(a) * mpmath.rgamma(c - b)
                * (-z) ** (-b) * _series(b, b - c + 1, b - a + 1, 1 / z)
            )
        return complex(value)


def euler_integral_2f1(a, b, c, z, spec: QuadratureSpec | None = None) -> complex:
    """Gamma(c)/(Gamma(b) Gamma(c-b)) int_0^1 y^(b-1) (1-y)^(c-b-1) (1-zy)^(-a) dy, for Re c > Re b > 0."""
    a, b, c, z = (complex(v) for v in (a, b, c, z))
    if not (c.real > b.real > 0):
        raise RegimeError("regime: Euler integral needs Re c > Re b > 0")
    spec = spec or QuadratureSpec.from_settings('tanh-sinh')
    if spec.scheme != 'tanh-sinh':
        raise ValueError("Euler integral needs a tanh-sinh rule")
    points, weights = spec.rule(0.0, 1.0)
    lower, upper = tanh_sinh_gaps(0.0, 1.0, spec.tanh_sinh_steps)
    integrand = lower ** (b - 1) * upper ** (c - b - 1) * (1 - z * points) ** (-a)
    prefactor = special.gamma(c) * special.rgamma(b) * special.rgamma(c - b)
    return complex(prefactor * np.dot(integrand, weights))


# -- Motohashi kernel ----------------------------------------------------------

def _tau_rule() -> tuple[np.ndarray, np.ndarray]:
    """Nodes on (0, pi/2), refined geometrically toward pi/2 where K_{2ir}(2|u| cos tau) oscillates."""
    edges = np.union1d(np.linspace(0.0, math.pi / 2, 9), graded_edges(0.0, math.pi / 2, 0.5, 1e-14))
    return gl_panels(edges)


def _require_nonzero(u: complex) -> complex:
    u = complex(u)
    if u == 0:
        raise UndefinedError("K-kernel undefined at u = 0")
    return u


def motohashi_K(r: float, u: complex) -> complex:
    """K_{ir}(u) = (8 cosh(pi r)/pi^2) int_0^{pi/2} cos(2|u| cos(arg u) sin tau) K_{2ir}(2|u| cos tau) dtau."""
    u = _require_nonzero(u)
    tau, w = _tau_rule()
    modulus, theta = abs(u), cmath.phase(u)
    kernel = scaled_bessel_K_grid([r], 2 * modulus * np.cos(tau))[0]
    value = np.dot(np.cos(2 * modulus * math.cos(theta) * np.sin(tau)) * kernel, w)
    return complex(8 / math.pi ** 2 * value)


def motohashi_K_series(r: float, u: complex, mmax: int = 40) -> complex:
    """The same kernel expanded over J_{2m}(2|u| sin tau), m <= mmax, m = 0 counted once."""
    u = _require_nonzero(u)
    tau, w = _tau_rule()
    modulus, theta = abs(u), cmath.phase(u)
    kernel = scaled_bessel_K_grid([r], 2 * modulus * np.cos(tau))[0] * w
    orders = np.arange(mmax + 1)
    moments = special.jv(2 * orders[:, None], 2 * modulus * np.sin(tau)[None, :]) @ kernel
    angular = (-1.0) ** orders * 2 * np.cos(2 * orders * theta)
    angular[0] = 1.0
    return complex(8 / math.pi ** 2 * np.dot(angular, moments))


def _bold_j(nu, z):
    """2^(-2 nu) |z|^(2 nu) J*_nu(z) J*_nu(conj z), J*_nu(z) = J_nu(z) (z/2)^(-nu)."""
    def j_star(w):
        return mpmath.hyp0f1(nu + 1, -w * w / 4) * mpmath.rgamma(nu + 1)
    return mpmath.power(2, -2 * nu) * mpmath.power(abs(z), 2 * nu) * j_star(z) * j_star(mpmath.conj(z))


def motohashi_K_bessel(nu: complex, u: complex) -> complex:
    """(J_{-nu}(u) - J_nu(u)) / sin(pi nu) straight from the Bessel-product definition; nu = ir gives K_{ir}."""
    u = _require_nonzero(u)
    nu = complex(nu)
    if _is_integer(nu):
        raise PoleError("K-kernel definition needs non-integer order")
    with mpmath.workdps(30):
        z, order = mpmath.mpc(u), mpmath.mpc(nu)
        return complex((_bold_j(-order, z) - _bold_j(order, z)) / mpmath.sin(mpmath.pi * order))


def h_check(u: complex, h: Callable, r_max: float = 8.0) -> complex:
    """h-check(u) = (1/2) int K_{ir}(u) r^2 h(r) dr, through the tau-integral form of the kernel.

    ``h`` is any even callable on real arrays; objects exposing ``r_window``
    (such as ``WeightSpec``) set the r-range themselves.
    """
    u = _require_nonzero(u)
    r_max = float(getattr(h, 'r_window', r_max))
    rs, wr = gl_panels(symmetric_edges(r_max, 0.5))
    tau, wt = _tau_rule()
    modulus, theta = abs(u), cmath.phase(u)
    xs = 2 * modulus * np.cos(tau)
    weights = rs ** 2 * np.asarray(h(rs)) * wr
    kernel = bessel_K_imag_grid(rs, xs) * np.cosh(np.pi * rs)[:, None]
    inner = weights @ kernel
    value = np.dot(np.cos(2 * modulus * math.cos(theta) * np.sin(tau)) * inner, wt)
    logger.debug("h-check at |u|=%g: %d r-nodes, %d tau-nodes", modulus, rs.size, tau.size)
    return complex(4 / math.pi ** 2 * value)


def bessel_addition_check(a: float, b: float, z: float, theta: float, mmax: int = 40) -> float:
    """|J0(az)J0(bz) + 2 sum_{m<=mmax} cos(2m theta) J_{2m}(az) J_{2m}(bz) - RHS|."""
    if min(a, b, z) <= 0 or not 0 <= theta <= math.pi / 2:
        raise ValueError("needs a, b, z > 0 and 0 <= theta <= pi/2")
    orders = 2 * np.arange(1, mmax + 1)
    lhs = special.j0(a * z) * special.j0(b * z) + 2 * np.sum(
        np.cos(orders * theta) * special.jv(orders, a * z) * special.jv(orders, b * z))
    plus = math.sqrt(a * a + b * b + 2 * a * b * math.cos(theta))
    minus = math.sqrt(max(a * a + b * b - 2 * a * b * math.cos(theta), 0.0))
    rhs = 0.5 * special.j0(z * plus) + 0.5 * special.j0(z * minus)
    return float(abs(lhs - rhs))
