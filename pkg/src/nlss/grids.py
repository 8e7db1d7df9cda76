"""Uniform Dirichlet grids on intervals and rectangles.

Boundary nodes are excluded; a field stores interior nodal values only and
is implicitly zero on the boundary.  All integrals use the nodal (mass
lumped) quadrature with a single uniform weight, so the discrete mass
matrix is a multiple of the identity.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np


@dataclass(frozen=True)
class DomainSpec:
    """Interval (0, L) or rectangle (0, Lx) x (0, Ly), n interior points per axis."""

    kind: str
    lengths: tuple[float, ...]
    n: int

    def __post_init__(self):
        if self.kind not in ("interval", "rectangle"):
            raise ValueError(f"unknown domain kind {self.kind!r}")
        ndim = 1 if self.kind == "interval" else 2
        lengths = tuple(float(x) for x in self.lengths)
        if len(lengths) != ndim:
            raise ValueError(f"{self.kind} needs {ndim} length(s), got {len(lengths)}")
        if any(x <= 0 for x in lengths):
            raise ValueError("lengths must be positive")
        if self.n < 3:
            raise ValueError("need at least 3 interior points per axis")
        object.__setattr__(self, "lengths", lengths)


@dataclass(frozen=True)
class Grid:
    domain: DomainSpec
    h: tuple[float, ...]
    shape: tuple[int, ...]
    node_count: int
    quad_weight: float

    @property
    def ndim(self):
        return len(self.shape)

    def coords(self):
        """Interior node coordinates, one flat array per axis."""
        axes = [
            (np.arange(1, m + 1) * hx) for m, hx in zip(self.shape, self.h)
        ]
        if self.ndim == 1:
            return (axes[0],)
        x, y = np.meshgrid(axes[0], axes[1], indexing="ij")
        return x.ravel(), y.ravel()


def build_grid(spec: DomainSpec) -> Grid:
    n = spec.n
    h = tuple(L / (n + 1) for L in spec.lengths)
    shape = tuple(n for _ in spec.lengths)
    node_count = int(np.prod(shape))
    quad_weight = float(np.prod(h))
    return Grid(spec, h, shape, node_count, quad_weight)


def _check(g: Grid, u: np.ndarray):
    if u.shape != (g.node_count,):
        raise ValueError(f"field shape {u.shape} does not match grid ({g.node_count},)")


def laplacian_apply(g: Grid, u: np.ndarray) -> np.ndarray:
    """Second-order centered -Laplacian with zero Dirichlet boundary."""
    _check(g, u)
    if g.ndim == 1:
        h2 = g.h[0] ** 2
        out = 2.0 * u
        out[1:] -= u[:-1]
        out[:-1] -= u[1:]
        return out / h2
    v = u.reshape(g.shape)
    hx2, hy2 = g.h[0] ** 2, g.h[1] ** 2
    out = (2.0 / hx2 + 2.0 / hy2) * v
    out[1:, :] -= v[:-1, :] / hx2
    out[:-1, :] -= v[1:, :] / hx2
    out[:, 1:] -= v[:, :-1] / hy2
    out[:, :-1] -= v[:, 1:] / hy2
    return out.ravel()


@lru_cache(maxsize=8)
def laplacian_matrix(g: Grid) -> np.ndarray:
    """Dense matrix of the discrete -Laplacian (symmetric positive definite)."""
    n = g.node_count
    A = np.zeros((n, n))
    eye = np.eye(n)
    for k in range(n):
        A[:, k] = laplacian_apply(g, eye[:, k].copy())
    return A


def inner_grad(g: Grid, u: np.ndarray, v: np.ndarray) -> float:
    """Discrete <grad u, grad v> = quad_weight * v^T (-Lap u)."""
    _check(g, u)
    _check(g, v)
    return float(g.quad_weight * np.dot(v, laplacian_apply(g, u)))


def inner_l2(g: Grid, u: np.ndarray, v: np.ndarray) -> float:
    _check(g, u)
    _check(g, v)
    return float(g.quad_weight * np.dot(u, v))


def norm_lp(g: Grid, u: np.ndarray, p: int) -> float:
    _check(g, u)
    if p not in (2, 4):
        raise ValueError(f"unsupported p={p}, expected 2 or 4")
    return float((g.quad_weight * np.sum(np.abs(u) ** p)) ** (1.0 / p))
