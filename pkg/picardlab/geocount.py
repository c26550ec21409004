"""Brute-force prime geodesic counting for PSL(2, Z[i]).

Elements are enumerated in an entry-height box, bucketed by trace and
norm, and merged into conjugacy classes through conjugators of bounded
height. The merge is heuristic: two conjugate elements whose shortest
conjugator is taller than ``conj_height`` stay in separate classes, so
every report carries the box parameters and a ``complete`` flag.
"""
from __future__ import annotations

import logging
import math
from collections import defaultdict
from dataclasses import dataclass, replace

from pydantic import BaseModel, ConfigDict
from tqdm import tqdm

from .cache import cache_result
from .exceptions import IncompleteBoxError
from .gint import GaussianInt, ONE, ZERO, enumerate_by_norm, xgcd
from .hyp3 import Axis, Classification, Matrix2, axis, classify, multiplier, sign_canonical

logger = logging.getLogger(__name__)

NORM_DIGITS = 9


@dataclass(frozen=True)
class ClassRecord:
    representative: Matrix2
    trace: GaussianInt
    N_T: float
    N_T0: float
    m_T: int
    Lambda: float
    primitive: bool
    size: int = 1


class CountReport(BaseModel):
    model_config = ConfigDict(frozen=True)

    X: float
    pi_gamma: int
    psi_gamma: float
    E_gamma: float
    H: int
    conj_height: int
    complete: bool


# -- enumeration ---------------------------------------------------------------

@cache_result(prefix='picardlab:sl2')
def sl2_box(H: int, progress: bool = False) -> list[Matrix2]:
    """Every element of PSL(2, Z[i]) whose entries have norm <= H."""
    if H < 1:
        raise ValueError("height must be >= 1")
    values = [ZERO] + enumerate_by_norm(H)
    radius = math.sqrt(H)
    found: set[Matrix2] = set()
    for a in tqdm(values, desc=f"SL(2) box H={H}", disable=not progress):
        for c in values:
            if not a and not c:
                continue
            g, x, y = xgcd(a, c)
            if g != ONE:
                continue
            # a d - b c = 1 for (b, d) = (-y, x) + k (a, c), k in Z[i]
            b0, d0 = -y, x
            pivot, base = (a, b0) if a.norm() >= c.norm() else (c, d0)
            center = -complex(base) / complex(pivot)
            reach = radius / abs(complex(pivot)) + 1
            for kr in range(math.floor(center.real - reach), math.ceil(center.real + reach) + 1):
                for ki in range(math.floor(center.imag - reach), math.ceil(center.imag + reach) + 1):
                    k = GaussianInt(kr, ki)
                    b, d = b0 + k * a, d0 + k * c
                    if b.norm() <= H and d.norm() <= H:
                        found.add(Matrix2.make(a, b, c, d))
    logger.debug("SL(2) box of height %d holds %d elements", H, len(found))
    return sorted(found, key=lambda M: M.sort_key)


def enumerate_elements(H: int, progress: bool = False) -> list[Matrix2]:
    """Hyperbolic and loxodromic elements of the height-H box, ordered by norm."""
    kept = [M for M in sl2_box(H, progress)
            if classify(M) in (Classification.HYPERBOLIC, Classification.LOXODROMIC)]
    return sorted(kept, key=lambda M: (round(multiplier(M).N_T, NORM_DIGITS), M.sort_key))


def torsion_elements(H: int) -> list[Matrix2]:
    return [M for M in sl2_box(H) if classify(M) is Classification.ELLIPTIC]


# -- classes -------------------------------------------------------------------

def class_key(M: Matrix2) -> tuple[GaussianInt, float]:
    return sign_canonical(M.trace()), round(multiplier(M).N_T, NORM_DIGITS)


def _find(parent: list[int], i: int) -> int:
    while parent[i] != i:
        parent[i] = parent[parent[i]]
        i = parent[i]
    return i


def conjugacy_classes(elements: list[Matrix2], conj_height: int) -> list[ClassRecord]:
    buckets: dict[tuple, list[Matrix2]] = defaultdict(list)
    for M in elements:
        buckets[class_key(M)].append(M)
    conjugators = sl2_box(conj_height)
    records = []
    for key, members in buckets.items():
        position = {M: i for i, M in enumerate(members)}
        parent = list(range(len(members)))
        if len(members) > 1:
            for i, M in enumerate(members):
                for g in conjugators:
                    j = position.get(M.conjugate_by(g))
                    if j is not None:
                        parent[_find(parent, i)] = _find(parent, j)
        groups: dict[int, list[Matrix2]] = defaultdict(list)
        for i, M in enumerate(members):
            groups[_find(parent, i)].append(M)
        for group in groups.values():
            rep = min(group, key=lambda M: M.sort_key)
            records.append(ClassRecord(representative=rep, trace=key[0], N_T=multiplier(rep).N_T,
                                       N_T0=multiplier(rep).N_T, m_T=1, Lambda=0.0,
                                       primitive=True, size=len(group)))
    records.sort(key=lambda rec: (rec.N_T, rec.representative.sort_key))
    logger.debug("%d elements fall into %d classes (conj_height=%d)", len(elements), len(records), conj_height)
    return records


def _same_endpoints(first: Axis, second: Axis, tol: float = 1e-9) -> bool:
    def close(u, v):
        if u is None or v is None:
            return u is None and v is None
        return abs(u - v) <= tol * max(1.0, abs(u))
    return ((close(first.fixed1, second.fixed1) and close(first.fixed2, second.fixed2))
            or (close(first.fixed1, second.fixed2) and close(first.fixed2, second.fixed1)))


def _primitive_root(T: Matrix2, elements: list[Matrix2]) -> Matrix2:
    """Smallest-norm enumerated element T0 on the axis of T with K(T) = K(T0)^k."""
    target = multiplier(T)
    log_norm = math.log(target.N_T)
    for E in elements:
        candidate = multiplier(E)
        if candidate.N_T >= target.N_T * (1 - 1e-12):
            break
        k = log_norm / math.log(candidate.N_T)
        power = round(k)
        if power < 2 or abs(k - power) > 1e-6:
            continue
        if abs(target.K_T - candidate.K_T ** power) > 1e-9 * abs(target.K_T):
            continue
        if _same_endpoints(axis(T), axis(E)):
            return E
    return T


def _torsion_order(T: Matrix2, torsion: list[Matrix2]) -> int:
    """1 + number of enumerated elliptic elements commuting with T; a lower bound for m(T)."""
    return 1 + sum(1 for E in torsion if T * E == E * T)


def weights_and_primitivity(classes: list[ClassRecord], elements: list[Matrix2],
                            torsion: list[Matrix2]) -> list[ClassRecord]:
    """Fill in T0, m(T) and Lambda(T) = log N(T0) / (m(T) |a(T) - a(T)^-1|^2)."""
    weighted = []
    for record in classes:
        T = record.representative
        root = _primitive_root(T, elements)
        n_root = multiplier(root).N_T
        m_T = _torsion_order(T, torsion)
        a = multiplier(T).a_T
        lam = math.log(n_root) / (m_T * abs(a - 1 / a) ** 2)
        weighted.append(replace(record, N_T0=n_root, m_T=m_T, Lambda=lam, primitive=root == T))
    return weighted


def class_inventory_stable(elements: list[Matrix2], conj_height: int) -> bool:
    """Doubling the conjugator height leaves the number of classes unchanged."""
    return len(conjugacy_classes(elements, conj_height)) == len(conjugacy_classes(elements, 2 * conj_height))


@cache_result(prefix='picardlab:classes')
def weighted_classes(H: int, conj_height: int) -> tuple[list[ClassRecord], bool]:
    elements = enumerate_elements(H)
    classes = weights_and_primitivity(conjugacy_classes(elements, conj_height), elements, torsion_elements(H))
    complete = class_inventory_stable(elements, conj_height)
    if not complete:
        logger.warning("class inventory for H=%d changes when conj_height %d is doubled", H, conj_height)
    return classes, complete


# -- counting ------------------------------------------------------------------

def certified_X(elements: list[Matrix2], H: int) -> float:
    """Largest X for which every admissible trace with |t| <= sqrt(X) + 1/sqrt(X) occurs in the box."""
    traces = {sign_canonical(M.trace()) for M in elements}
    missing = 4 * H + 9
    for t in enumerate_by_norm(4 * H + 8):
        if t.im == 0 and abs(t.re) <= 2:
            continue
        if sign_canonical(t) not in traces:
            missing = t.norm()
            break
    if missing <= 4:
        return 1.0
    # y + 1/y = sqrt(missing) with y = sqrt(X)
    y = (math.sqrt(missing) + math.sqrt(missing - 4)) / 2
    return y * y


def _report(classes: list[ClassRecord], X: float, H: int, conj_height: int, complete: bool) -> CountReport:
    below = [rec for rec in classes if rec.N_T <= X]
    # N(T) Lambda(T) -> log N(T0) / m(T) as N(T) grows; this is the weight whose sum has main term X^2/2
    psi_gamma = math.fsum(rec.N_T * rec.Lambda for rec in below)
    return CountReport(X=X, pi_gamma=sum(1 for rec in below if rec.primitive), psi_gamma=psi_gamma,
                       E_gamma=psi_gamma - X * X / 2, H=H, conj_height=conj_height, complete=complete)


def count(X: float, H: int, conj_height: int = 1) -> CountReport:
    """pi_Gamma(X), Psi_Gamma(X) and E_Gamma(X) = Psi_Gamma(X) - X^2/2 from the height-H box."""
    if X <= 1:
        raise ValueError("count needs X > 1")
    limit = certified_X(enumerate_elements(H), H)
    if X > limit:
        raise IncompleteBoxError(f"X={X:g} exceeds the certified range {limit:.4g} of H={H}; increase H")
    classes, complete = weighted_classes(H, conj_height)
    return _report(classes, X, H, conj_height, complete)


def counting_series(H: int, xs, conj_height: int = 1) -> list[CountReport]:
    limit = certified_X(enumerate_elements(H), H)
    classes, complete = weighted_classes(H, conj_height)
    reports = []
    for X in xs:
        if X > limit:
            raise IncompleteBoxError(f"X={X:g} exceeds the certified range {limit:.4g} of H={H}; increase H")
        reports.append(_report(classes, float(X), H, conj_height, complete))
    return reports
