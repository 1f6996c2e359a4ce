"""Recognize cross-polytopes, regular simplices and valid packings; find close pairs.

Every check returns a :class:`Certificate` carrying the measured residuals, so
callers can apply a stricter threshold than the one used for the verdict.
"""
from __future__ import annotations

from dataclasses import dataclass, field
import math
from typing import Any

import numpy as np

from .constructions import PackingSpec
from .documents import to_plain
from .geometry import (
    DEFAULT_TOL,
    SQRT2,
    DimensionError,
    Tolerance,
    as_pointset,
    pairwise_distances,
)
from .miniball import caratheodory_witness, min_enclosing_ball


@dataclass
class Certificate:
    verdict: bool
    shape_tag: str
    residuals: dict[str, float] = field(default_factory=dict)
    witness: dict[str, Any] | None = None

    def to_dict(self) -> dict[str, Any]:
        return {
            "verdict": self.verdict,
            "shape_tag": self.shape_tag,
            "residuals": {k: float(v) for k, v in self.residuals.items()},
            "witness": to_plain(self.witness),
        }


def certify_cross_polytope(ps, tol: Tolerance = DEFAULT_TOL) -> Certificate:
    """Accept ``ps`` iff it is the vertex set of a regular cross-polytope.

    Conditions: the farthest-partner map is an unambiguous perfect matching at
    the global maximum distance, the pair midpoints coincide, all points are at
    half that distance from the common center, and every other distance equals
    the maximum over sqrt(2). The last condition forces the pair axes to be
    mutually orthogonal.
    """
    p = as_pointset(ps)
    m, n = p.shape
    if m != 2 * n:
        raise DimensionError(f"a {n}-dimensional cross-polytope has {2 * n} vertices, got {m}")
    eps = tol.eps_cert
    d = pairwise_distances(p)
    d_max = float(d.max())
    if d_max <= eps:
        return Certificate(False, "cross-polytope", {"diameter": d_max})

    masked = d.copy()
    np.fill_diagonal(masked, -np.inf)
    partner = np.argmax(masked, axis=1)  # first maximum: smallest index on ties
    unpaired = 0
    for i in range(m):
        j = partner[i]
        second = np.delete(masked[i], [i, j]).max(initial=-np.inf)
        if partner[j] != i or masked[i, j] - second <= eps:
            unpaired += 1
    residuals = {
        "unpaired": float(unpaired),
        "antipodal": float(np.max(d_max - d[np.arange(m), partner])),
    }
    if unpaired:
        return Certificate(False, "cross-polytope", residuals)

    pairs = sorted({(min(i, int(j)), max(i, int(j))) for i, j in enumerate(partner)})
    mids = np.array([(p[i] + p[j]) / 2 for i, j in pairs])
    center = mids.mean(axis=0)
    residuals["center"] = float(np.max(np.linalg.norm(mids - center, axis=1)))
    residuals["radius"] = float(np.max(np.abs(np.linalg.norm(p - center, axis=1) - d_max / 2)))
    edge = d_max / SQRT2
    mask = ~np.eye(m, dtype=bool)
    mask[np.arange(m), partner] = False
    residuals["edge"] = float(np.max(np.abs(d[mask] - edge))) if mask.any() else 0.0
    verdict = all(v <= eps for v in residuals.values())
    witness = {"pairs": pairs, "center": center, "radius": d_max / 2} if verdict else None
    return Certificate(verdict, "cross-polytope", residuals, witness)


def certify_simplex(ps, tol: Tolerance = DEFAULT_TOL) -> Certificate:
    p = as_pointset(ps, min_card=2)
    d = pairwise_distances(p)[np.triu_indices(p.shape[0], k=1)]
    residuals = {"edge_spread": float(d.max() - d.min())}
    verdict = residuals["edge_spread"] <= tol.eps_cert and d.min() > tol.eps_cert
    witness = {"edge": float(d.mean()), "centroid": p.mean(axis=0)} if verdict else None
    return Certificate(bool(verdict), "simplex", residuals, witness)


def certify_packing(spec: PackingSpec, tol: Tolerance = DEFAULT_TOL) -> Certificate:
    """Check that every unit ball lies in the container and no two overlap.

    Residuals are violations (0 when satisfied): ``containment`` is how far
    the worst ball sticks out of the container, ``overlap`` how far the
    closest pair of centers falls short of distance 2.
    """
    c = spec.unit_ball_centers
    reach = np.linalg.norm(c - spec.container.center, axis=1) + 1.0
    containment = max(0.0, float(reach.max() - spec.container.radius))
    if c.shape[0] > 1:
        gap = float(pairwise_distances(c)[np.triu_indices(c.shape[0], k=1)].min())
    else:
        gap = math.inf
    overlap = max(0.0, 2.0 - gap)
    residuals = {"containment": containment, "overlap": overlap}
    verdict = containment <= tol.eps_cert and overlap <= tol.eps_cert
    witness = None
    if verdict:
        witness = {
            "container_radius": spec.container.radius,
            "min_center_distance": gap if math.isfinite(gap) else None,
            "max_center_norm": float(reach.max() - 1.0),
        }
    return Certificate(verdict, "packing", residuals, witness)


def find_close_pair(ps, tol: Tolerance = DEFAULT_TOL) -> Certificate:
    """Two of ``dim + 2`` or more points at distance <= sqrt(2) times the circumradius.

    The set is moved so its enclosing ball is the unit ball. The center is a
    convex combination of at most ``dim + 1`` points; any remaining point
    ``p1`` has a nonnegative inner product with one of them, and that pair
    lies within sqrt(2). If rounding hides such a point the pair with the
    largest inner product over the whole set is used instead.
    """
    p = as_pointset(ps)
    m, n = p.shape
    if m < n + 2:
        raise DimensionError(f"need at least dim + 2 = {n + 2} points, got {m}")
    dec = min_enclosing_ball(p, tol)
    r = dec.ball.radius
    if r <= tol.eps_geom:
        pair = (0, 1)
        dist = float(np.linalg.norm(p[0] - p[1]))
        return Certificate(True, "close-pair", {"excess": 0.0},
                           {"pair": pair, "distance": dist, "circumradius": r, "method": "coincident"})
    q = (p - dec.ball.center) / r
    # the miniball support already writes the center (now the origin) as a
    # convex combination of at most dim + 1 points
    support = list(dec.support_indices)
    if len(support) > n + 1:
        support, _ = caratheodory_witness(q, np.zeros(n), tol)
    p1 = next(i for i in range(m) if i not in support)
    dots = q[support] @ q[p1]
    best = int(np.argmax(dots))
    method = "caratheodory"
    if dots[best] >= -tol.eps_geom:
        pair = tuple(sorted((p1, support[best])))
    else:
        g = q @ q.T
        np.fill_diagonal(g, -np.inf)
        i, j = np.unravel_index(int(np.argmax(g)), g.shape)
        pair = (int(min(i, j)), int(max(i, j)))
        method = "pair-scan"
    dist = float(np.linalg.norm(p[pair[0]] - p[pair[1]]))
    excess = max(0.0, dist - SQRT2 * r)
    witness = {
        "pair": pair,
        "distance": dist,
        "circumradius": r,
        "dropped": p1,
        "caratheodory_support": support,
        "method": method,
    }
    return Certificate(excess <= tol.eps_cert, "close-pair", {"excess": excess}, witness)
