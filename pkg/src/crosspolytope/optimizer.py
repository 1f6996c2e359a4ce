"""Maximin dispersion of ``k`` points in the unit ball (or on the unit sphere).

Each restart maximizes the smoothed minimum of squared distances

    f_beta(X) = -(1/beta) * log sum_{i<j} exp(-beta * |x_i - x_j|^2)

by projected gradient ascent with a backtracking step, sharpening ``beta``
through a schedule. Restarts draw from independent RNG streams derived from
``(seed, restart)``, so results do not depend on execution order.
"""
from __future__ import annotations

from dataclasses import dataclass, field
import math

import numpy as np
from scipy.special import logsumexp

from .geometry import SQRT2, as_pointset, min_pairwise_distance

INITIAL_STEP = 0.1
MIN_STEP = 1e-16


@dataclass(frozen=True)
class OptimizerConfig:
    k: int
    dim: int
    surface_only: bool = False
    restarts: int = 64
    seed: int = 42
    smoothing_schedule: tuple[float, ...] = (1e1, 1e2, 1e3, 1e4, 1e5)
    max_iters_per_stage: int = 10_000
    step_tolerance: float = 1e-12

    def __post_init__(self):
        object.__setattr__(self, "smoothing_schedule", tuple(float(b) for b in self.smoothing_schedule))
        if self.k < 2 or self.dim < 1 or self.restarts < 1:
            raise ValueError("need k >= 2, dim >= 1, restarts >= 1")
        betas = self.smoothing_schedule
        if not betas or betas[0] <= 0 or any(b >= a for b, a in zip(betas, betas[1:])):
            raise ValueError("smoothing schedule must be positive and strictly increasing")
        if self.max_iters_per_stage < 1 or not self.step_tolerance > 0:
            raise ValueError("max_iters_per_stage must be >= 1 and step_tolerance > 0")


@dataclass
class OptimizerResult:
    best: np.ndarray
    achieved_min_distance: float
    per_restart_values: list[float] = field(default_factory=list)
    iterations_used: int = 0


def sample_in_ball(rng: np.random.Generator, k: int, dim: int, surface_only: bool = False) -> np.ndarray:
    """``k`` points uniform in the unit ball (or on the sphere): Gaussian direction, radius U^(1/dim)."""
    g = rng.standard_normal((k, dim))
    norms = np.linalg.norm(g, axis=1, keepdims=True)
    norms[norms == 0] = 1.0
    u = g / norms
    if surface_only:
        return u
    return u * rng.random((k, 1)) ** (1.0 / dim)


def project(x: np.ndarray, surface_only: bool) -> np.ndarray:
    """Radial projection onto the unit ball, or onto the unit sphere."""
    norms = np.linalg.norm(x, axis=1, keepdims=True)
    if surface_only:
        out = x / np.where(norms == 0, 1.0, norms)
        out[norms[:, 0] == 0] = np.eye(x.shape[1])[0]
        return out
    return x / np.maximum(norms, 1.0)


class _SoftMin:
    def __init__(self, k: int):
        self.iu, self.ju = np.triu_indices(k, k=1)

    def value(self, x: np.ndarray, beta: float) -> float:
        diff = x[self.iu] - x[self.ju]
        d2 = np.einsum("ij,ij->i", diff, diff)
        return float(-logsumexp(-beta * d2) / beta)

    def value_and_grad(self, x: np.ndarray, beta: float):
        diff = x[self.iu] - x[self.ju]
        d2 = np.einsum("ij,ij->i", diff, diff)
        a = -beta * d2
        lse = logsumexp(a)
        w = np.exp(a - lse)
        wm = np.zeros((x.shape[0], x.shape[0]))
        wm[self.iu, self.ju] = w
        wm += wm.T
        grad = 2.0 * (wm.sum(axis=1)[:, None] * x - wm @ x)
        return float(-lse / beta), grad


def _ascend(x, beta, cfg: OptimizerConfig, soft: _SoftMin) -> tuple[np.ndarray, int]:
    f, g = soft.value_and_grad(x, beta)
    iters = 0
    step = INITIAL_STEP
    while iters < cfg.max_iters_per_stage:
        iters += 1
        # retry from twice the last accepted step, never above the initial one
        step = min(INITIAL_STEP, 2.0 * step)
        while step >= MIN_STEP:
            cand = project(x + step * g, cfg.surface_only)
            fc = soft.value(cand, beta)
            if fc > f:
                break
            step *= 0.5
        else:
            break
        x = cand
        improvement = fc - f
        f, g = soft.value_and_grad(x, beta)
        if improvement < cfg.step_tolerance:
            break
    return x, iters


def _run_stages(x, betas, cfg: OptimizerConfig) -> tuple[np.ndarray, int]:
    soft = _SoftMin(cfg.k)
    total = 0
    best, best_val = x, min_pairwise_distance(x)[0]
    for beta in betas:
        x, it = _ascend(x, beta, cfg, soft)
        total += it
        val = min_pairwise_distance(x)[0]
        if val > best_val:
            best, best_val = x, val
    return best, total


def _restart(cfg: OptimizerConfig, index: int) -> tuple[np.ndarray, float, int]:
    rng = np.random.default_rng([cfg.seed, index])
    x0 = sample_in_ball(rng, cfg.k, cfg.dim, cfg.surface_only)
    x, iters = _run_stages(x0, cfg.smoothing_schedule, cfg)
    return x, min_pairwise_distance(x)[0], iters


def _check_upper_bound(cfg: OptimizerConfig, value: float):
    # no k >= dim + 2 points of the unit ball are pairwise farther apart than sqrt(2)
    if cfg.k >= cfg.dim + 2 and value > SQRT2 + 1e-9:
        raise AssertionError(f"min distance {value!r} exceeds sqrt(2) for k={cfg.k}, dim={cfg.dim}")


def maximin_optimize(cfg: OptimizerConfig) -> OptimizerResult:
    """Best of ``cfg.restarts`` annealed soft-min ascents from random starts."""
    values, iters = [], 0
    best, best_val = None, -math.inf
    for index in range(cfg.restarts):
        x, val, it = _restart(cfg, index)
        values.append(val)
        iters += it
        if val > best_val:
            best, best_val = x, val
    _check_upper_bound(cfg, best_val)
    return OptimizerResult(best, best_val, values, iters)


def refine_local(ps, cfg: OptimizerConfig) -> OptimizerResult:
    """Run only the sharpest smoothing stage from ``ps``; never returns a worse configuration."""
    x0 = as_pointset(ps)
    if x0.shape != (cfg.k, cfg.dim):
        raise ValueError(f"expected {cfg.k} points in dimension {cfg.dim}, got shape {x0.shape}")
    start = min_pairwise_distance(x0)[0]
    x, iters = _run_stages(project(x0, cfg.surface_only), cfg.smoothing_schedule[-1:], cfg)
    val = min_pairwise_distance(x)[0]
    if val < start:
        x, val = x0, start
    _check_upper_bound(cfg, val)
    return OptimizerResult(x, val, [val], iters)
