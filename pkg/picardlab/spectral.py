"""Eigenvalue tables and spectral exponential sums.

Tables hold spectral parameters r_j (lambda_j = 1 + r_j^2) as UTF-8 text,
one decimal per line, ascending; lines starting with '#' are comments and
a '# source: <label>' comment names the provenance.
"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .exceptions import NonAscendingError, NonPositiveError, TableParseError
from .lfun import dedekind_zeta
from .moments import omega_T

logger = logging.getLogger(__name__)

SYNTHETIC = 'synthetic'
# lambda_1 >= pi^2 on the Picard manifold
SPECTRAL_FLOOR = math.sqrt(math.pi ** 2 - 1)


@dataclass(frozen=True)
class SpectralTable:
    values: tuple[float, ...] = ()
    source: str = ''

    def __post_init__(self):
        if any(v <= 0 for v in self.values):
            raise NonPositiveError("spectral parameters must be positive")
        if any(b <= a for a, b in zip(self.values, self.values[1:])):
            raise NonAscendingError("spectral parameters must be strictly increasing")

    def __len__(self) -> int:
        return len(self.values)

    @property
    def array(self) -> np.ndarray:
        return np.asarray(self.values, dtype=float)

    @property
    def synthetic(self) -> bool:
        return self.source == SYNTHETIC

    def up_to(self, T: float) -> np.ndarray:
        r = self.array
        return r[r <= T]


@dataclass(frozen=True)
class ExplicitFormula:
    value: float
    X: float
    T: float
    in_range: bool
    terms: np.ndarray = field(repr=False, compare=False, default_factory=lambda: np.array([], dtype=complex))


def load_table(path) -> SpectralTable:
    path = Path(path)
    source = path.name
    values = []
    for number, line in enumerate(path.read_text(encoding='utf-8').splitlines(), start=1):
        line = line.strip()
        if not line:
            continue
        if line.startswith('#'):
            label = line.lstrip('#').strip()
            if label.lower().startswith('source:'):
                source = label.split(':', 1)[1].strip()
            continue
        try:
            values.append(float(line))
        except ValueError:
            raise TableParseError(f"{path.name}:{number}: not a number: {line!r}") from None
    for number, value in enumerate(values, start=1):
        if value <= 0:
            raise NonPositiveError(f"{path.name}: entry {number} is {value}, spectral parameters must be positive")
    for number, (prev, value) in enumerate(zip(values, values[1:]), start=2):
        if value <= prev:
            raise NonAscendingError(f"{path.name}: entry {number} ({value}) does not exceed {prev}")
    table = SpectralTable(values=tuple(values), source=source)
    if values and not table.synthetic and values[0] < SPECTRAL_FLOOR:
        logger.warning("%s: r_1 = %g is below sqrt(pi^2 - 1) = %.6f", path.name, values[0], SPECTRAL_FLOOR)
    logger.debug("loaded %d spectral parameters from %s (source %s)", len(values), path, source)
    return table


def write_table(table: SpectralTable, path) -> None:
    lines = [f"# source: {table.source}"] + [f"{value:.12f}" for value in table.values]
    Path(path).write_text('\n'.join(lines) + '\n', encoding='utf-8')


def picard_volume() -> float:
    """vol = |D|^{3/2} zeta_k(2) / (4 pi^2) with D = -4."""
    return 8 * dedekind_zeta(2).real / (4 * math.pi ** 2)


def weyl_synthetic_table(count: int, volume: float | None = None) -> SpectralTable:
    """r_j solving vol/(6 pi^2) r^3 = j - 1/2; a labelled stand-in for real eigenvalue data."""
    volume = picard_volume() if volume is None else volume
    j = np.arange(1, count + 1) - 0.5
    values = np.cbrt(6 * math.pi ** 2 * j / volume)
    return SpectralTable(values=tuple(float(v) for v in values), source=SYNTHETIC)


def _check(T: float, X: float) -> None:
    if T <= 0 or X <= 1:
        raise ValueError("spectral sums need T > 0 and X > 1")


def spectral_exp_sum(table: SpectralTable, T: float, X: float) -> complex:
    """S(T, X) = sum over 0 < r_j <= T of X^{i r_j}."""
    _check(T, X)
    return complex(np.exp(1j * table.up_to(T) * math.log(X)).sum())


def sharp_sum(table: SpectralTable, lower: float, upper: float, X: float) -> complex:
    r = table.array
    r = r[(r > lower) & (r <= upper)]
    return complex(np.exp(1j * r * math.log(X)).sum())


def smoothed_sum(table: SpectralTable, T: float, G: float, X: float) -> complex:
    """sum_j omega_T(r_j) X^{i r_j}: a smoothed version of the sum over (T, 2T]."""
    _check(T, X)
    r = table.array
    return complex(np.sum(omega_T(r, T, G) * np.exp(1j * r * math.log(X))))


def dyadic_sum(table: SpectralTable, T: float, G: float, X: float, levels: int) -> complex:
    """Sum of smoothed blocks at T_i = T 2^{-i}, i = 1..levels, covering (T 2^{-levels}, T]."""
    return sum((smoothed_sum(table, T / 2 ** i, G, X) for i in range(1, levels + 1)), 0j)


def edge_count(table: SpectralTable, T: float, G: float, levels: int, c: float = 3.0) -> int:
    """Number of r_j within c G sqrt(log T) of some block edge T 2^{-i}, i = 0..levels."""
    window = c * G * math.sqrt(max(math.log(T), 1.0))
    r = table.array
    edges = T / 2.0 ** np.arange(levels + 1)
    near = np.abs(r[:, None] - edges[None, :]) <= window
    return int(np.count_nonzero(near.any(axis=1)))


def explicit_terms(table: SpectralTable, T: float, X: float) -> np.ndarray:
    """X^{1 + i r_j} / (1 + i r_j) for each 0 < r_j <= T."""
    r = table.up_to(T)
    return X * np.exp(1j * r * math.log(X)) / (1 + 1j * r)


def explicit_rhs(table: SpectralTable, T: float, X: float) -> ExplicitFormula:
    """X^2/2 + 2 Re sum_{0 < r_j <= T} X^{1 + i r_j} / (1 + i r_j)."""
    _check(T, X)
    in_range = 1 <= T <= math.sqrt(X)
    if not in_range:
        logger.warning("explicit formula evaluated at T=%g outside [1, sqrt(X)] for X=%g", T, X)
    terms = explicit_terms(table, T, X)
    value = X * X / 2 + 2 * float(np.sum(terms).real)
    return ExplicitFormula(value=value, X=X, T=T, in_range=in_range, terms=terms)
