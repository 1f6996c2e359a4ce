"""Closed-form extremal configurations: cross-polytopes, regular simplices, packings."""
from __future__ import annotations

from dataclasses import dataclass
import math

import numpy as np

from .geometry import Ball, as_pointset


class UnsupportedParameterError(ValueError):
    """Parameters outside the range where a closed form is known."""


@dataclass(frozen=True)
class PackingSpec:
    """Unit balls (radius 1) centered at ``unit_ball_centers`` inside ``container``."""

    container: Ball
    unit_ball_centers: np.ndarray

    def __post_init__(self):
        c = as_pointset(self.unit_ball_centers)
        if c.shape[1] != self.container.dim:
            raise ValueError("centers and container differ in dimension")
        object.__setattr__(self, "unit_ball_centers", c)


def cross_polytope_vertices(dim: int, radius: float = 1.0) -> np.ndarray:
    """The ``2 * dim`` points ``+-radius * e_i``, ordered ``+e1, -e1, +e2, -e2, ...``."""
    if dim < 1:
        raise ValueError(f"dim must be >= 1, got {dim}")
    if not radius > 0:
        raise ValueError(f"radius must be positive, got {radius}")
    pts = np.zeros((2 * dim, dim))
    for i in range(dim):
        pts[2 * i, i] = radius
        pts[2 * i + 1, i] = -radius
    return pts


def simplex_vertices(k: int, dim: int, radius: float = 1.0) -> np.ndarray:
    """Regular ``(k-1)``-simplex inscribed in the sphere of ``radius`` about the origin.

    The vertices live in the first ``k - 1`` coordinates, the first one on the
    positive ``e1`` axis; each later vertex adds one new coordinate (lower
    triangular layout), giving edge length ``radius * sqrt(2k / (k - 1))``.
    """
    if not 2 <= k <= dim + 1:
        raise ValueError(f"need 2 <= k <= dim + 1, got k={k}, dim={dim}")
    if not radius > 0:
        raise ValueError(f"radius must be positive, got {radius}")
    # Gram matrix of unit vertices: 1 on the diagonal, -1/(k-1) elsewhere
    off = -1.0 / (k - 1)
    pts = np.zeros((k, dim))
    for j in range(k):
        for c in range(min(j, k - 1)):
            # coordinate c of vertex j from <v_j, v_c> = off (rows c < j already fixed)
            pts[j, c] = (off - pts[j, :c] @ pts[c, :c]) / pts[c, c]
        if j < k - 1:
            pts[j, j] = math.sqrt(max(0.0, 1.0 - pts[j, :j] @ pts[j, :j]))
    return radius * pts


def packing_radius(k: int, dim: int) -> float:
    """Smallest container radius holding ``k`` unit ``dim``-balls, ``2 <= k <= 2 * dim``."""
    if dim < 2:
        raise ValueError(f"dim must be >= 2, got {dim}")
    if k < 2:
        raise ValueError(f"k must be >= 2, got {k}")
    if k > 2 * dim:
        raise UnsupportedParameterError(
            f"k={k} > 2*dim: only the strict bound r > 1 + sqrt(2) is known, no value"
        )
    if k <= dim + 1:
        return 1.0 + math.sqrt(2.0 - 2.0 / k)
    return 1.0 + math.sqrt(2.0)


def optimal_packing(k: int, dim: int) -> PackingSpec:
    radius = packing_radius(k, dim)
    if k <= dim + 1:
        centers = simplex_vertices(k, dim, math.sqrt(2.0 - 2.0 / k))
    else:
        centers = cross_polytope_vertices(dim, math.sqrt(2.0))[:k]
    return PackingSpec(Ball(np.zeros(dim), radius), centers)
