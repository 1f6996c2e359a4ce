import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from crosspolytope.geometry import (
    SQRT2,
    Ball,
    DimensionError,
    NotUnitVectorError,
    OriginNotInRelativeInteriorError,
    Tolerance,
    crescent_intersection_basis,
    dist,
    dot,
    in_crescent,
    in_half_space,
    linear_hull_rank,
    min_pairwise_distance,
    origin_in_relative_interior,
)
from crosspolytope.constructions import cross_polytope_vertices

from conftest import SQUARE

TOL = Tolerance()


def test_dot_examples():
    assert dot((1, 0), (0, 1)) == 0
    assert dot((1, 1), (1, 1)) == 2
    assert dot((0.6, 0.8), (0.6, 0.8)) == pytest.approx(1.0, abs=1e-15)


def test_dist_examples():
    assert dist((1, 0), (-1, 0)) == 2
    assert dist((1, 0), (0, 1)) == pytest.approx(1.414213562, abs=1e-9)
    assert dist((0, 0), (0, 0)) == 0


@pytest.mark.parametrize("fn", [dot, dist])
def test_dimension_mismatch(fn):
    with pytest.raises(DimensionError):
        fn((1, 0), (1, 0, 0))


def test_vector_rejects_nonfinite():
    with pytest.raises(ValueError):
        dist((math.nan, 0), (0, 0))


def test_tolerance_invariants():
    with pytest.raises(ValueError):
        Tolerance(eps_geom=1e-5, eps_cert=1e-6)
    with pytest.raises(ValueError):
        Tolerance(eps_geom=0.0)


def test_ball_rejects_negative_radius():
    with pytest.raises(ValueError):
        Ball((0, 0), -1.0)


def test_min_pairwise_distance_examples():
    d, pair = min_pairwise_distance(SQUARE)
    assert d == pytest.approx(SQRT2, abs=1e-15)
    assert pair == (0, 2)
    d, pair = min_pairwise_distance([(0, 0), (1, 0), (0, 0.5)])
    assert (d, pair) == (0.5, (0, 2))
    d, pair = min_pairwise_distance(cross_polytope_vertices(3, 1.0))
    assert d == pytest.approx(SQRT2, abs=1e-15)
    assert pair == (0, 2)


def test_min_pairwise_distance_duplicates_and_size():
    assert min_pairwise_distance([(1, 1), (0, 0), (1, 1)]) == (0.0, (0, 2))
    with pytest.raises(DimensionError):
        min_pairwise_distance([(1, 1)])


@settings(max_examples=50, deadline=None)
@given(arrays(float, (6, 3), elements=st.floats(-1, 1)), st.randoms(use_true_random=False))
def test_min_pairwise_distance_permutation_invariant(p, rnd):
    perm = list(range(6))
    rnd.shuffle(perm)
    assert min_pairwise_distance(p)[0] == pytest.approx(min_pairwise_distance(p[perm])[0], abs=0)


def test_half_space_examples():
    assert in_half_space((1, 0), (-0.5, 0.3))
    assert in_half_space((1, 0), (0, 1))
    assert not in_half_space((1, 0), (0.2, 0))
    with pytest.raises(NotUnitVectorError):
        in_half_space((2, 0), (0, 1))


def test_crescent_examples():
    assert in_crescent((1, 0), (-1, 0))
    assert in_crescent((1, 0), (0, 1))
    assert not in_crescent((1, 0), (0.5, 0))
    assert not in_crescent((1, 0), (-1.5, 0))  # outside the unit ball
    with pytest.raises(NotUnitVectorError):
        in_crescent((0.5, 0), (0, 1))


def test_linear_hull_rank_examples():
    assert linear_hull_rank([(1, 0), (-1, 0)]) == 1
    assert linear_hull_rank([(1, 0), (0, 1)]) == 2
    assert linear_hull_rank([(0, 0)]) == 0
    # relative cutoff: a 1e-9 wobble on a unit-scale line is not a new direction
    assert linear_hull_rank([(1, 0), (-1, 1e-9)]) == 1


def test_origin_in_relative_interior_examples():
    assert origin_in_relative_interior([(1, 0), (-1, 0)])
    assert not origin_in_relative_interior([(1, 0), (0, 1)])
    assert origin_in_relative_interior(SQUARE)
    assert origin_in_relative_interior([(0, 0)])
    # origin on an edge of a triangle: in the hull but not the relative interior
    assert not origin_in_relative_interior([(1, 0), (-1, 0), (0, 1)])
    # 3-D: a segment through the origin, in a higher dimension
    assert origin_in_relative_interior([(0, 0, 1), (0, 0, -1)])


def test_crescent_intersection_basis_examples():
    b = crescent_intersection_basis([(1, 0, 0), (-1, 0, 0)])
    assert len(b) == 2
    m = np.array(b)
    assert np.allclose(m[:, 0], 0, atol=1e-15)
    assert np.allclose(m @ m.T, np.eye(2), atol=1e-12)
    b = crescent_intersection_basis([(1, 0), (-1, 0)])
    assert len(b) == 1 and abs(abs(b[0][1]) - 1) < 1e-15
    assert crescent_intersection_basis(SQUARE) == []


def test_crescent_intersection_basis_errors():
    with pytest.raises(NotUnitVectorError):
        crescent_intersection_basis([(2, 0), (-1, 0)])
    with pytest.raises(OriginNotInRelativeInteriorError):
        crescent_intersection_basis([(1, 0), (0, 1)])


def _unit_rows(rng, m, n):
    g = rng.standard_normal((m, n))
    return g / np.linalg.norm(g, axis=1, keepdims=True)


@pytest.mark.parametrize("n", range(2, 7))
def test_crescent_inside_half_space(rng, n):
    x = _unit_rows(rng, 1, n)[0]
    # bias samples toward the crescent so both outcomes occur
    ys = rng.uniform(-1, 1, (2000, n)) - 0.5 * x
    for y in ys:
        if in_crescent(x, y, TOL):
            assert in_half_space(x, y, TOL)


@pytest.mark.parametrize("n", range(2, 7))
def test_closed_half_ball_within_sqrt2(rng, n):
    x = _unit_rows(rng, 1, n)[0]
    ys = _unit_rows(rng, 2000, n) * rng.random((2000, 1)) ** (1 / n)
    ys[ys @ x < 0] *= -1
    assert max(dist(x, y) for y in ys) <= SQRT2 + TOL.eps_geom


@pytest.mark.parametrize("n", range(2, 7))
def test_equator_in_crescent(rng, n):
    x = _unit_rows(rng, 1, n)[0]
    for y in _unit_rows(rng, 200, n):
        y = y - (y @ x) * x
        y /= np.linalg.norm(y)
        assert in_crescent(x, y, TOL)
        assert abs(dist(x, y) - SQRT2) <= TOL.eps_geom


@pytest.mark.parametrize("n,k", [(n, k) for n in range(2, 7) for k in (1, 2, 3) if k <= n])
def test_crescent_basis_distances(rng, n, k):
    # antipodal pairs along k random orthonormal axes: origin is in the relative interior
    axes = np.linalg.qr(rng.standard_normal((n, k)))[0].T
    a = np.vstack([axes, -axes])
    basis = np.array(crescent_intersection_basis(a, TOL)).reshape(-1, n)
    assert basis.shape[0] == n - linear_hull_rank(a, TOL) == n - k
    assert np.allclose(basis @ basis.T, np.eye(n - k), atol=TOL.eps_geom)
    for v in basis:
        for x in a:
            assert abs(dist(x, v) - SQRT2) <= TOL.eps_geom


@settings(max_examples=100, deadline=None)
@given(arrays(float, (3, 4), elements=st.floats(-10, 10)))
def test_triangle_inequality(p):
    a, b, c = p
    assert dist(a, c) <= dist(a, b) + dist(b, c) + 1e-9
