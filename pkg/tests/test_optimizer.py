import numpy as np
import pytest

from crosspolytope.certify import certify_cross_polytope, certify_simplex
from crosspolytope.constructions import cross_polytope_vertices, simplex_vertices
from crosspolytope.geometry import SQRT2, Tolerance, min_pairwise_distance
from crosspolytope.optimizer import (
    OptimizerConfig,
    maximin_optimize,
    project,
    refine_local,
    sample_in_ball,
)


def _check_result(res, cfg):
    norms = np.linalg.norm(res.best, axis=1)
    if cfg.surface_only:
        assert np.all(np.abs(norms - 1) <= 1e-12)
    else:
        assert np.all(norms <= 1 + 1e-12)
    assert res.achieved_min_distance == pytest.approx(min_pairwise_distance(res.best)[0], abs=1e-9)
    assert res.achieved_min_distance == max(res.per_restart_values)


def test_square_in_disk():
    cfg = OptimizerConfig(k=4, dim=2)
    res = maximin_optimize(cfg)
    _check_result(res, cfg)
    assert res.achieved_min_distance == pytest.approx(SQRT2, abs=1e-6)
    assert certify_cross_polytope(res.best, Tolerance(1e-9, 1e-5)).verdict


def test_two_points_antipodal():
    cfg = OptimizerConfig(k=2, dim=2, restarts=4)
    res = maximin_optimize(cfg)
    _check_result(res, cfg)
    assert res.achieved_min_distance == pytest.approx(2.0, abs=1e-9)


def test_triangle_on_circle():
    cfg = OptimizerConfig(k=3, dim=2, surface_only=True, restarts=8)
    res = maximin_optimize(cfg)
    _check_result(res, cfg)
    edge = simplex_vertices(3, 2)
    assert res.achieved_min_distance == pytest.approx(min_pairwise_distance(edge)[0], abs=1e-6)
    assert certify_simplex(res.best, Tolerance(1e-9, 1e-5)).verdict


def test_deterministic_and_restart_streams_independent():
    a = maximin_optimize(OptimizerConfig(k=5, dim=2, restarts=3, seed=7))
    b = maximin_optimize(OptimizerConfig(k=5, dim=2, restarts=3, seed=7))
    c = maximin_optimize(OptimizerConfig(k=5, dim=2, restarts=5, seed=7))
    assert np.array_equal(a.best, b.best) and a.per_restart_values == b.per_restart_values
    assert c.per_restart_values[:3] == a.per_restart_values


def test_seed_changes_starts():
    a = maximin_optimize(OptimizerConfig(k=3, dim=3, restarts=1, seed=1, smoothing_schedule=(10.0,), max_iters_per_stage=1))
    b = maximin_optimize(OptimizerConfig(k=3, dim=3, restarts=1, seed=2, smoothing_schedule=(10.0,), max_iters_per_stage=1))
    assert not np.array_equal(a.best, b.best)


@pytest.mark.parametrize("dim", [2, 3])
def test_never_beats_sqrt2_for_dim_plus_two(dim):
    cfg = OptimizerConfig(k=dim + 2, dim=dim, restarts=2, max_iters_per_stage=2000)
    res = maximin_optimize(cfg)
    _check_result(res, cfg)
    assert res.achieved_min_distance <= SQRT2 + 1e-9


def test_refine_exact_cross_polytope():
    cfg = OptimizerConfig(k=6, dim=3)
    res = refine_local(cross_polytope_vertices(3, 1.0), cfg)
    assert res.achieved_min_distance >= SQRT2 - 1e-12


def test_refine_noisy_cross_polytope(rng):
    cfg = OptimizerConfig(k=6, dim=3)
    noisy = cross_polytope_vertices(3, 1.0) + 1e-3 * rng.standard_normal((6, 3))
    noisy = project(noisy, False)
    res = refine_local(noisy, cfg)
    assert res.achieved_min_distance == pytest.approx(SQRT2, abs=1e-6)


def test_refine_never_worse(rng):
    cfg = OptimizerConfig(k=6, dim=3, max_iters_per_stage=200)
    for _ in range(5):
        x = sample_in_ball(rng, 6, 3)
        res = refine_local(x, cfg)
        assert res.achieved_min_distance >= min_pairwise_distance(x)[0]
        _check_result(res, cfg)


def test_refine_shape_mismatch():
    with pytest.raises(ValueError):
        refine_local(np.zeros((4, 2)), OptimizerConfig(k=6, dim=3))


@pytest.mark.parametrize(
    "kwargs",
    [
        dict(k=1, dim=2),
        dict(k=3, dim=0),
        dict(k=3, dim=2, restarts=0),
        dict(k=3, dim=2, smoothing_schedule=(10.0, 10.0)),
        dict(k=3, dim=2, smoothing_schedule=(100.0, 10.0)),
        dict(k=3, dim=2, smoothing_schedule=(-1.0,)),
        dict(k=3, dim=2, smoothing_schedule=()),
    ],
)
def test_config_validation(kwargs):
    with pytest.raises(ValueError):
        OptimizerConfig(**kwargs)


def test_sampler_in_ball(rng):
    x = sample_in_ball(rng, 5000, 3)
    r = np.linalg.norm(x, axis=1)
    assert r.max() <= 1
    # uniform in the 3-ball: P(|x| <= 1/2) = 1/8
    assert abs(np.mean(r <= 0.5) - 0.125) < 0.02
    s = sample_in_ball(rng, 10, 4, surface_only=True)
    assert np.allclose(np.linalg.norm(s, axis=1), 1)


def test_project():
    x = np.array([[2.0, 0.0], [0.3, 0.4], [0.0, 0.0]])
    assert np.allclose(project(x, False), [[1, 0], [0.3, 0.4], [0, 0]])
    assert np.allclose(project(x, True), [[1, 0], [0.6, 0.8], [1, 0]])
