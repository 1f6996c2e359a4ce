"""Dimension-generic points, balls and the half-space / crescent predicates.

Vectors and point sets are plain ``numpy`` arrays (shape ``(n,)`` and
``(m, n)``); :func:`as_vector` and :func:`as_pointset` validate them.
"""
from __future__ import annotations

from dataclasses import dataclass
import math

import numpy as np
from scipy.optimize import linprog

SQRT2 = math.sqrt(2.0)


class DimensionError(ValueError):
    """Operands of different dimension, or a point set of the wrong size."""


class NotUnitVectorError(ValueError):
    """A point expected on the unit sphere is not unit length."""


class OriginNotInRelativeInteriorError(ValueError):
    """The origin is not in the relative interior of a point set's hull."""


@dataclass(frozen=True)
class Tolerance:
    """Predicate slack ``eps_geom`` and certification slack ``eps_cert``."""

    eps_geom: float = 1e-9
    eps_cert: float = 1e-6

    def __post_init__(self):
        if not (0 < self.eps_geom <= self.eps_cert < 1):
            raise ValueError(
                f"need 0 < eps_geom <= eps_cert < 1, got {self.eps_geom}, {self.eps_cert}"
            )


DEFAULT_TOL = Tolerance()


@dataclass(frozen=True)
class Ball:
    center: np.ndarray
    radius: float

    def __post_init__(self):
        object.__setattr__(self, "center", as_vector(self.center))
        if not (self.radius >= 0 and math.isfinite(self.radius)):
            raise ValueError(f"ball radius must be finite and >= 0, got {self.radius}")

    @property
    def dim(self) -> int:
        return self.center.shape[0]

    def contains(self, y, slack: float = 0.0) -> bool:
        return dist(self.center, y) <= self.radius + slack


def as_vector(x) -> np.ndarray:
    v = np.array(x, dtype=float)
    if v.ndim != 1 or v.shape[0] < 1:
        raise DimensionError(f"a vector needs shape (n,), n >= 1; got {v.shape}")
    if not np.all(np.isfinite(v)):
        raise ValueError("vector coordinates must be finite")
    return v


def as_pointset(points, min_card: int = 1) -> np.ndarray:
    """Validate ``points`` as an ``(m, n)`` float array with ``m >= min_card``."""
    p = np.array(points, dtype=float)
    if p.ndim == 1 and p.size == 0:
        p = p.reshape(0, 1)
    if p.ndim != 2 or p.shape[1] < 1:
        raise DimensionError(f"a point set needs shape (m, n); got {p.shape}")
    if p.shape[0] < min_card:
        raise DimensionError(f"need at least {min_card} points, got {p.shape[0]}")
    if not np.all(np.isfinite(p)):
        raise ValueError("point coordinates must be finite")
    return p


def origin(dim: int) -> np.ndarray:
    return np.zeros(dim)


def _pair(a, b):
    a, b = as_vector(a), as_vector(b)
    if a.shape != b.shape:
        raise DimensionError(f"dimension mismatch: {a.shape[0]} vs {b.shape[0]}")
    return a, b


def dot(a, b) -> float:
    a, b = _pair(a, b)
    return float(a @ b)


def dist(a, b) -> float:
    a, b = _pair(a, b)
    return float(np.linalg.norm(a - b))


def pairwise_distances(ps) -> np.ndarray:
    p = as_pointset(ps)
    diff = p[:, None, :] - p[None, :, :]
    return np.sqrt(np.einsum("ijk,ijk->ij", diff, diff))


def min_pairwise_distance(ps) -> tuple[float, tuple[int, int]]:
    """Shortest distance in ``ps`` and the lexicographically first pair attaining it."""
    p = as_pointset(ps, min_card=2)
    d = pairwise_distances(p)
    iu, ju = np.triu_indices(p.shape[0], k=1)
    vals = d[iu, ju]
    # np.argmin returns the first minimum; triu order is lexicographic in (i, j)
    best = int(np.argmin(vals))
    return float(vals[best]), (int(iu[best]), int(ju[best]))


def _unit(x, tol: Tolerance) -> np.ndarray:
    x = as_vector(x)
    if abs(np.linalg.norm(x) - 1.0) > tol.eps_geom:
        raise NotUnitVectorError(f"expected a unit vector, |x| = {np.linalg.norm(x)!r}")
    return x


def in_half_space(x, y, tol: Tolerance = DEFAULT_TOL) -> bool:
    """Closed half-space ``{y : x.y <= 0}`` opposite the unit vector ``x``."""
    x = _unit(x, tol)
    return dot(x, y) <= tol.eps_geom


def in_crescent(x, y, tol: Tolerance = DEFAULT_TOL) -> bool:
    """Points of the unit ball at distance at least sqrt(2) from the unit vector ``x``."""
    x = _unit(x, tol)
    _, y = _pair(x, y)
    return bool(np.linalg.norm(y) <= 1.0 + tol.eps_geom and dist(x, y) >= SQRT2 - tol.eps_geom)


def _span(ps, tol: Tolerance) -> tuple[int, np.ndarray]:
    """Rank of the span of the rows and a full orthonormal basis of R^n (first ``rank`` span it)."""
    p = as_pointset(ps)
    u, s, _ = np.linalg.svd(p.T, full_matrices=True)
    if s.size == 0 or s[0] <= tol.eps_geom:
        return 0, u
    return int(np.sum(s > tol.eps_cert * s[0])), u


def linear_hull_rank(ps, tol: Tolerance = DEFAULT_TOL) -> int:
    return _span(ps, tol)[0]


def max_min_coefficient(ps, target=None) -> tuple[float, np.ndarray | None]:
    """Best ``t`` with ``target = sum w_i p_i``, ``sum w_i = 1``, ``w_i >= t``.

    Returns ``(t, w)``; ``(-inf, None)`` when ``target`` is not in the affine hull.
    Equalities are imposed in an orthonormal frame of the span so the LP stays
    well conditioned.
    """
    p = as_pointset(ps)
    m, n = p.shape
    target = np.zeros(n) if target is None else as_vector(target)
    q = np.vstack([p - target, np.zeros((1, n))])
    rank, basis = _span(q, Tolerance(1e-14, 1e-12))
    coords = (p - target) @ basis[:, :rank]
    # variables: w_1..w_m, t ; maximize t
    c = np.zeros(m + 1)
    c[-1] = -1.0
    a_eq = np.zeros((rank + 1, m + 1))
    a_eq[:rank, :m] = coords.T
    a_eq[rank, :m] = 1.0
    b_eq = np.zeros(rank + 1)
    b_eq[rank] = 1.0
    a_ub = np.hstack([-np.eye(m), np.ones((m, 1))])
    res = linprog(
        c, A_ub=a_ub, b_ub=np.zeros(m), A_eq=a_eq, b_eq=b_eq,
        bounds=[(None, None)] * m + [(None, 1.0)], method="highs",
    )
    if res.status != 0:
        return -math.inf, None
    w = res.x[:m]
    return float(res.x[-1]), w


def origin_in_relative_interior(ps, tol: Tolerance = DEFAULT_TOL) -> bool:
    """Whether the origin is a convex combination of ``ps`` with every weight >= eps_cert."""
    t, _ = max_min_coefficient(ps)
    return t >= tol.eps_cert


def crescent_intersection_basis(a, tol: Tolerance = DEFAULT_TOL) -> list[np.ndarray]:
    """Orthonormal basis of the orthogonal complement of Lin(a).

    Every unit vector of that complement is at distance exactly sqrt(2) from
    each point of ``a``, so the basis spans the great sphere common to all
    crescents of ``a``. Empty when ``a`` spans the whole space.
    """
    p = as_pointset(a)
    for x in p:
        _unit(x, tol)
    if not origin_in_relative_interior(p, tol):
        raise OriginNotInRelativeInteriorError(
            "the origin is not in the relative interior of Conv(a)"
        )
    rank, u = _span(p, tol)
    return [u[:, j].copy() for j in range(rank, p.shape[1])]
