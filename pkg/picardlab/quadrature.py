"""Fixed-node quadrature rules: Gauss-Legendre panels and tanh-sinh.

Every rule returns ``(points, weights)`` as numpy arrays so callers can
vectorize the integrand and reuse nodes across several integrals.
"""
from __future__ import annotations

import logging
import math
from functools import lru_cache
from typing import Literal

import numpy as np
from django.conf import settings
from pydantic import BaseModel, ConfigDict, Field
from scipy.special import roots_legendre

logger = logging.getLogger(__name__)

DEFAULT_PANEL_NODES = 20
TANH_SINH_T_MAX = 4.0


class QuadratureSpec(BaseModel):
    model_config = ConfigDict(frozen=True)

    scheme: Literal['tanh-sinh', 'gauss-legendre'] = 'gauss-legendre'
    abs_tol: float = Field(default=1e-10, gt=0)
    max_nodes: int = Field(default=4096, gt=0, le=1 << 20)
    panel_nodes: int = Field(default=64, ge=2, le=128)

    @classmethod
    def from_settings(cls, scheme: str = 'gauss-legendre') -> QuadratureSpec:
        if not settings.configured:
            return cls(scheme=scheme)
        return cls(scheme=scheme, abs_tol=settings.PICARDLAB['ABS_TOL'], max_nodes=settings.PICARDLAB['MAX_NODES'])

    @property
    def tanh_sinh_steps(self) -> int:
        """Steps per unit t, capped so the rule stays within max_nodes."""
        return max(4, min(64, int((self.max_nodes - 1) // (2 * TANH_SINH_T_MAX))))

    def rule(self, a: float, b: float, panels: int = 1) -> tuple[np.ndarray, np.ndarray]:
        if self.scheme == 'tanh-sinh':
            return tanh_sinh(a, b, self.tanh_sinh_steps)
        nodes = min(self.panel_nodes, max(2, self.max_nodes // panels))
        return gl_panels(np.linspace(a, b, panels + 1), nodes)


@lru_cache(maxsize=64)
def _legendre(n: int) -> tuple[np.ndarray, np.ndarray]:
    x, w = roots_legendre(n)
    x.setflags(write=False)
    w.setflags(write=False)
    return x, w


def gl_panels(edges, n: int = DEFAULT_PANEL_NODES) -> tuple[np.ndarray, np.ndarray]:
    """Composite Gauss-Legendre rule with n nodes on each [edges[k], edges[k+1]]."""
    edges = np.asarray(edges, dtype=float)
    x, w = _legendre(n)
    left, right = edges[:-1, None], edges[1:, None]
    points = 0.5 * (right - left) * x + 0.5 * (right + left)
    weights = 0.5 * (right - left) * w
    return points.ravel(), weights.ravel()


def uniform_edges(a: float, b: float, max_width: float) -> np.ndarray:
    count = max(1, math.ceil((b - a) / max_width))
    return np.linspace(a, b, count + 1)


def symmetric_edges(half_width: float, max_width: float) -> np.ndarray:
    """Edges on [-half_width, half_width] with an even panel count, so 0 is an edge, never a node."""
    count = max(1, math.ceil(half_width / max_width))
    return np.linspace(-half_width, half_width, 2 * count + 1)


def graded_edges(a: float, b: float, ratio: float = 0.5, smallest: float = 1e-12,
                 toward: Literal['a', 'b'] = 'b') -> np.ndarray:
    """Edges that shrink geometrically toward one endpoint, for integrable endpoint singularities."""
    length = b - a
    offsets = []
    gap = length * ratio
    while gap > smallest * length:
        offsets.append(gap)
        gap *= ratio
    inner = b - np.array(offsets) if toward == 'b' else a + np.array(offsets)
    return np.sort(np.concatenate(([a, b], inner)))


def tanh_sinh(a: float, b: float, n: int, t_max: float = TANH_SINH_T_MAX) -> tuple[np.ndarray, np.ndarray]:
    """Tanh-sinh nodes with step 1/n on t in [-t_max, t_max], mapped to [a, b]."""
    h = 1.0 / n
    t = h * np.arange(-int(t_max * n), int(t_max * n) + 1)
    phi = 0.5 * np.pi * np.sinh(t)
    x = np.tanh(phi)
    points = 0.5 * (b - a) * x + 0.5 * (a + b)
    weights = h * 0.5 * np.pi * np.cosh(t) / np.cosh(phi) ** 2 * 0.5 * (b - a)
    return points, weights


def tanh_sinh_gaps(a: float, b: float, n: int, t_max: float = TANH_SINH_T_MAX) -> tuple[np.ndarray, np.ndarray]:
    """Distances of the tanh-sinh nodes to a and to b, without cancellation."""
    h = 1.0 / n
    t = h * np.arange(-int(t_max * n), int(t_max * n) + 1)
    phi = 0.5 * np.pi * np.sinh(t)
    lower = (b - a) / (1.0 + np.exp(-2.0 * phi))
    upper = (b - a) / (1.0 + np.exp(2.0 * phi))
    return lower, upper
