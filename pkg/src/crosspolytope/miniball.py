"""Minimum enclosing ball, circumradius and minimal support subsets.

The ball is found with the move-to-front variant of Welzl's algorithm,
iterating over the input in the given order (no shuffling), so results are
reproducible for a fixed input.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
import math

import numpy as np
from scipy.optimize import nnls

from .geometry import (
    DEFAULT_TOL,
    Ball,
    Tolerance,
    as_pointset,
    as_vector,
    max_min_coefficient,
)


class NotInHullError(ValueError):
    """The target point is not in the convex hull of the point set."""


class DegenerateSetError(ValueError):
    """All points coincide, so there is no positive circumradius."""


@dataclass(frozen=True)
class SupportDecomposition:
    """A ball with the support points and convex weights that express its center."""

    ball: Ball
    support_indices: tuple[int, ...]
    coefficients: np.ndarray

    @property
    def card(self) -> int:
        return len(self.support_indices)


def circumsphere(s: np.ndarray) -> tuple[np.ndarray, float, np.ndarray]:
    """Smallest sphere through the rows of ``s`` with center in their affine hull.

    Returns ``(center, radius, barycentric)`` where ``center = barycentric @ s``.
    """
    p0 = s[0]
    if s.shape[0] == 1:
        return p0.copy(), 0.0, np.ones(1)
    u = s[1:] - p0
    g = u @ u.T
    rhs = 0.5 * np.einsum("ij,ij->i", u, u)
    try:
        lam = np.linalg.solve(g, rhs)
        exact = np.all(np.abs(g @ lam - rhs) <= 1e-12 * max(1.0, rhs.max()))
    except np.linalg.LinAlgError:
        exact = False
    if not exact:
        # affinely dependent boundary (cospherical or duplicate input)
        lam = np.linalg.lstsq(g, rhs, rcond=None)[0]
    center = p0 + lam @ u
    bary = np.concatenate([[1.0 - lam.sum()], lam])
    if exact:
        radius = _norm(p0 - center)
    else:
        radius = float(np.sqrt(np.max(np.einsum("ij,ij->i", s - center, s - center))))
    return center, radius, bary


def _norm(v: np.ndarray) -> float:
    return math.sqrt(v @ v)


def _dedupe(p: np.ndarray, eps: float) -> tuple[np.ndarray, np.ndarray]:
    """Representatives of ``p`` up to ``eps``; returns (indices kept, map to representative)."""
    diff = p[:, None, :] - p[None, :, :]
    close = np.einsum("ijk,ijk->ij", diff, diff) <= eps * eps
    keep: list[int] = []
    owner = np.empty(p.shape[0], dtype=int)
    for i in range(p.shape[0]):
        hits = [r for r, j in enumerate(keep) if close[i, j]]
        if hits:
            owner[i] = hits[0]
        else:
            owner[i] = len(keep)
            keep.append(i)
    return np.array(keep, dtype=int), owner


def _mtf(p: np.ndarray, slack: float) -> tuple[np.ndarray, float, list[int]]:
    n = p.shape[1]
    order = list(range(p.shape[0]))
    state = {}

    def solve(boundary: list[int]):
        if not boundary:
            return None, -1.0
        c, r, _ = circumsphere(p[boundary])
        return c, r

    def mtf(end: int, boundary: list[int]):
        c, r = solve(boundary)
        state["ball"] = (c, r, list(boundary))
        if len(boundary) == n + 1:
            return
        i = 0
        while i < end:
            idx = order[i]
            c, r, _ = state["ball"]
            if c is None or _norm(p[idx] - c) > r + slack:
                mtf(i, boundary + [idx])
                order.insert(0, order.pop(i))
            i += 1

    mtf(len(order), [])
    c, r, boundary = state["ball"]
    return c, r, boundary


def _decompose(p: np.ndarray, keep: np.ndarray, tol: Tolerance) -> SupportDecomposition:
    """Miniball of ``p[keep]`` (distinct points) as a support decomposition in ``p`` indices."""
    q = p[keep]
    scale = max(1.0, float(np.max(np.abs(q))))
    center, radius, basis = _mtf(q, 1e-13 * scale)
    center, radius, bary = circumsphere(q[basis])
    dists = np.linalg.norm(q - center, axis=1)
    radius = float(np.max(dists))
    basis = np.array(basis, dtype=int)
    if bary.min() < -tol.eps_geom:
        # floating-point basis lost the center; re-derive weights from all boundary points
        basis = np.flatnonzero(dists >= radius - tol.eps_cert * max(1.0, radius))
        a = np.vstack([q[basis].T, np.ones(basis.size)])
        bary = nnls(a, np.concatenate([center, [1.0]]))[0]
        basis, bary = reduce_to_caratheodory(q, basis, bary, 0.0)
    # zero weights appear on cospherical inputs (e.g. three corners of a square)
    bary = np.clip(bary, 0.0, None)
    bary = bary / bary.sum()
    order = np.argsort(keep[basis])
    idx = tuple(int(keep[basis][k]) for k in order)
    return SupportDecomposition(Ball(center, radius), idx, bary[order])


def min_enclosing_ball(ps, tol: Tolerance = DEFAULT_TOL) -> SupportDecomposition:
    """Unique smallest ball containing ``ps`` with a support set certifying it.

    Duplicate points (within ``eps_geom``) are merged first; support indices
    refer to the first occurrence in ``ps``.
    """
    p = as_pointset(ps)
    keep, _ = _dedupe(p, tol.eps_geom)
    return _decompose(p, keep, tol)


def circumradius(ps) -> float:
    return min_enclosing_ball(ps).ball.radius


def minimal_support_subset(ps, tol: Tolerance = DEFAULT_TOL) -> SupportDecomposition:
    """Smallest subset of ``ps`` having the same circumradius, with its decomposition.

    Only subsets of the miniball support are searched: any subset with the
    full circumradius has the same enclosing ball and so contains one of its
    supports. Ties go to the lexicographically first index tuple.
    """
    p = as_pointset(ps, min_card=2)
    full = min_enclosing_ball(p, tol)
    if full.ball.radius <= tol.eps_geom:
        raise DegenerateSetError("all points coincide; circumradius is 0")
    support = full.support_indices
    for size in range(1, len(support) + 1):
        for sub in combinations(support, size):
            dec = _decompose(p, np.array(sub, dtype=int), tol)
            if dec.ball.radius >= full.ball.radius - tol.eps_geom * max(1.0, full.ball.radius):
                # keep only points with positive weight
                return _prune(dec, tol)
    return _prune(full, tol)


def _prune(dec: SupportDecomposition, tol: Tolerance) -> SupportDecomposition:
    keep = dec.coefficients > tol.eps_geom
    if keep.all():
        return dec
    w = dec.coefficients[keep] / dec.coefficients[keep].sum()
    idx = tuple(i for i, k in zip(dec.support_indices, keep) if k)
    return SupportDecomposition(dec.ball, idx, w)


def reduce_to_caratheodory(p: np.ndarray, idx: np.ndarray, w: np.ndarray, eps: float):
    """Drop points from a convex combination until at most ``dim + 1`` remain.

    Each round moves along an affine dependence of the current support until
    some weight reaches zero; the combined point is unchanged.
    """
    n = p.shape[1]
    idx, w = np.asarray(idx, dtype=int), np.asarray(w, dtype=float)
    live = w > eps
    idx, w = idx[live], w[live] / w[live].sum()
    while idx.size > n + 1:
        m = np.vstack([p[idx].T, np.ones(idx.size)])
        mu = np.linalg.svd(m)[2][-1]
        if mu.max() <= 0:
            mu = -mu
        pos = mu > 1e-14 * np.abs(mu).max()
        ratios = np.full(mu.shape, np.inf)
        ratios[pos] = w[pos] / mu[pos]
        j = int(np.argmin(ratios))
        w = w - ratios[j] * mu
        w[j] = 0.0
        live = w > eps
        live[j] = False
        idx, w = idx[live], np.clip(w[live], 0.0, None)
        w /= w.sum()
    return idx, w


def caratheodory_witness(ps, target, tol: Tolerance = DEFAULT_TOL) -> tuple[list[int], np.ndarray]:
    """At most ``dim + 1`` indices of ``ps`` and convex weights reproducing ``target``."""
    p = as_pointset(ps)
    target = as_vector(target)
    if target.shape[0] != p.shape[1]:
        raise ValueError("target dimension does not match the point set")
    w = None
    dec = min_enclosing_ball(p, tol)
    if np.linalg.norm(dec.ball.center - target) <= tol.eps_geom:
        idx = np.array(dec.support_indices, dtype=int)
        w = dec.coefficients
    else:
        t, w = max_min_coefficient(p, target)
        if w is None or t < -tol.eps_geom:
            raise NotInHullError("target is not in the convex hull of the points")
        idx = np.arange(p.shape[0])
        w = np.clip(w, 0.0, None)
        w /= w.sum()
    idx, w = reduce_to_caratheodory(p, idx, w, tol.eps_geom * 1e-3)
    if np.linalg.norm(w @ p[idx] - target) > tol.eps_cert:
        raise NotInHullError("target is not in the convex hull of the points")
    order = np.argsort(idx)
    return [int(i) for i in idx[order]], w[order]
