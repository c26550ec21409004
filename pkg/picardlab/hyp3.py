"""Hyperbolic 3-space and the action of PSL(2, Z[i])."""
from __future__ import annotations

import cmath
import logging
import math
from dataclasses import dataclass
from enum import Enum

from .exceptions import NoMultiplierError, NotInvertibleError
from .gint import GaussianInt, ONE, ZERO

logger = logging.getLogger(__name__)


class Classification(str, Enum):
    IDENTITY = 'identity'
    PARABOLIC = 'parabolic'
    ELLIPTIC = 'elliptic'
    HYPERBOLIC = 'hyperbolic'
    LOXODROMIC = 'loxodromic'


@dataclass(frozen=True)
class Point3:
    z: complex
    r: float

    def __post_init__(self):
        if not self.r > 0:
            raise ValueError(f"point of H^3 needs r > 0, got {self.r}")


def _sign_canonical(entries: tuple[GaussianInt, ...]) -> bool:
    """True when the first nonzero entry has re > 0, or re = 0 and im > 0."""
    for entry in entries:
        if entry:
            return entry.re > 0 or (entry.re == 0 and entry.im > 0)
    raise NotInvertibleError("zero matrix")


def sign_canonical(t: GaussianInt) -> GaussianInt:
    """Representative of {t, -t}; traces are only defined up to sign in PSL(2)."""
    t = GaussianInt.coerce(t)
    return t if not t or _sign_canonical((t,)) else -t


@dataclass(frozen=True, slots=True)
class Matrix2:
    """An element of SL(2, Z[i]) modulo +-I, stored with the canonical sign."""
    a: GaussianInt
    b: GaussianInt
    c: GaussianInt
    d: GaussianInt

    @classmethod
    def make(cls, a, b, c, d) -> Matrix2:
        a, b, c, d = (GaussianInt.coerce(x) for x in (a, b, c, d))
        if a * d - b * c != ONE:
            raise NotInvertibleError(f"determinant of [[{a}, {b}], [{c}, {d}]] is not 1")
        if not _sign_canonical((a, b, c, d)):
            a, b, c, d = -a, -b, -c, -d
        return cls(a, b, c, d)

    @classmethod
    def identity(cls) -> Matrix2:
        return cls(ONE, ZERO, ZERO, ONE)

    def __str__(self) -> str:
        return f"[[{self.a}, {self.b}], [{self.c}, {self.d}]]"

    def __mul__(self, other: Matrix2) -> Matrix2:
        return Matrix2.make(
            self.a * other.a + self.b * other.c, self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c, self.c * other.b + self.d * other.d,
        )

    @property
    def entries(self) -> tuple[GaussianInt, GaussianInt, GaussianInt, GaussianInt]:
        return self.a, self.b, self.c, self.d

    @property
    def height(self) -> int:
        return max(x.norm() for x in self.entries)

    @property
    def sort_key(self) -> tuple:
        return tuple(key for x in self.entries for key in (x.re, x.im))

    def trace(self) -> GaussianInt:
        return self.a + self.d

    def inverse(self) -> Matrix2:
        return Matrix2.make(self.d, -self.b, -self.c, self.a)

    def conjugate_by(self, g: Matrix2) -> Matrix2:
        """g M g^-1."""
        return g * self * g.inverse()

    def power(self, k: int) -> Matrix2:
        base = self if k >= 0 else self.inverse()
        result = Matrix2.identity()
        for _ in range(abs(k)):
            result = result * base
        return result

    def is_identity(self) -> bool:
        return self == Matrix2.identity()

    def is_torsion(self) -> bool:
        return classify(self) in (Classification.IDENTITY, Classification.ELLIPTIC)

    def complex_entries(self) -> tuple[complex, complex, complex, complex]:
        return tuple(complex(x) for x in self.entries)


@dataclass(frozen=True)
class Multiplier:
    a_T: complex
    K_T: complex
    N_T: float


@dataclass(frozen=True)
class Axis:
    """Boundary fixed points (None stands for infinity) and the top of the geodesic between them."""
    fixed1: complex | None
    fixed2: complex | None
    sample_point: Point3


def _act(a: complex, b: complex, c: complex, d: complex, P: Point3) -> Point3:
    w = c * P.z + d
    denominator = abs(w) ** 2 + abs(c) ** 2 * P.r ** 2
    z = ((a * P.z + b) * w.conjugate() + a * c.conjugate() * P.r ** 2) / denominator
    return Point3(z=z, r=P.r / denominator)


def act(M: Matrix2, P: Point3) -> Point3:
    """z* = ((az + b) conj(cz + d) + a conj(c) r^2) / D, r* = r / D, D = |cz + d|^2 + |c|^2 r^2."""
    return _act(*M.complex_entries(), P)


def dist(P: Point3, Q: Point3) -> float:
    """cosh d = (|z - z'|^2 + r^2 + r'^2) / (2 r r')."""
    value = (abs(P.z - Q.z) ** 2 + P.r ** 2 + Q.r ** 2) / (2 * P.r * Q.r)
    return math.acosh(max(value, 1.0))


def classify(M: Matrix2) -> Classification:
    if M.is_identity():
        return Classification.IDENTITY
    t = M.trace()
    if t.im != 0:
        return Classification.LOXODROMIC
    if abs(t.re) == 2:
        return Classification.PARABOLIC
    if abs(t.re) < 2:
        return Classification.ELLIPTIC
    return Classification.HYPERBOLIC


def _require_translation(M: Matrix2) -> None:
    kind = classify(M)
    if kind not in (Classification.HYPERBOLIC, Classification.LOXODROMIC):
        raise NoMultiplierError(f"no multiplier: {M} is {kind.value}")


def multiplier(M: Matrix2) -> Multiplier:
    """a(T) is the root of x^2 - tr(T) x + 1 with |a(T)| > 1; K(T) = a^2, N(T) = |a|^2."""
    _require_translation(M)
    t = complex(M.trace())
    root = cmath.sqrt(t * t - 4)
    a = max((t + root) / 2, (t - root) / 2, key=abs)
    return Multiplier(a_T=a, K_T=a * a, N_T=abs(a) ** 2)


def axis(M: Matrix2) -> Axis:
    """Fixed points of M on the boundary: roots of c z^2 + (d - a) z - b = 0."""
    _require_translation(M)
    a, b, c, d = M.complex_entries()
    if c == 0:
        finite = b / (d - a)
        return Axis(fixed1=finite, fixed2=None, sample_point=Point3(finite, 1.0))
    root = cmath.sqrt((a + d) ** 2 - 4)
    z1 = (a - d + root) / (2 * c)
    z2 = (a - d - root) / (2 * c)
    return Axis(fixed1=z1, fixed2=z2, sample_point=Point3((z1 + z2) / 2, abs(z1 - z2) / 2))


def dist_to_axis(P: Point3, M: Matrix2) -> float:
    """Distance from P to the axis of M, after moving the axis onto the vertical line over 0."""
    ends = axis(M)
    if ends.fixed2 is None:
        moved = Point3(P.z - ends.fixed1, P.r)
    else:
        # w -> (w - z1) / (w - z2), normalized to determinant 1
        z1, z2 = ends.fixed1, ends.fixed2
        scale = cmath.sqrt(z1 - z2)
        moved = _act(1 / scale, -z1 / scale, 1 / scale, -z2 / scale, P)
    # sinh d = |w| / r for the vertical axis over 0
    return math.asinh(abs(moved.z) / moved.r)


def displacement_check(M: Matrix2, P: Point3) -> tuple[float, float]:
    """(d(P, MP), log N(M)); the first is never below the second and equals it on the axis."""
    log_norm = math.log(multiplier(M).N_T)
    return dist(P, act(M, P)), log_norm
