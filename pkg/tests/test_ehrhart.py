from fractions import Fraction
from itertools import product
from math import factorial

import pytest
from hypothesis import given, settings

from conftest import brute_force_count, small_polytopes
from polydelta.ehrhart import (
    HStarVector,
    degree,
    ehrhart_counts,
    empty_depth,
    extrapolation_check,
    h_star,
    interior_counts,
    normalized_volume,
    profile,
    reciprocity_check,
)
from polydelta.geometry import from_points
from polydelta.report import InternalInconsistency


def eulerian(n):
    # A(n, k): permutations of n with k descents
    return [
        sum((-1) ** j * (k + 1 - j) ** n * factorial(n + 1) // (factorial(j) * factorial(n + 1 - j))
            for j in range(k + 1))
        for k in range(n)
    ]


def cube(n):
    return from_points(list(product((0, 1), repeat=n)), n)


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_cube_hstar_is_eulerian(n):
    assert h_star(cube(n)).coeffs == tuple(eulerian(n)) + (0,)
    assert normalized_volume(cube(n)) == factorial(n)


@pytest.mark.parametrize("r", [1, 2, 3, 5])
def test_reeve_tetrahedron(r):
    p = from_points([(0, 0, 0), (1, 0, 0), (0, 1, 0), (1, 1, r)])
    assert h_star(p).coeffs == (1, 0, r - 1, 0)
    assert normalized_volume(p) == r
    assert p.count_points() == 4
    if r > 1:
        assert degree(p) == 2 and empty_depth(p) == 1


def test_triangle_two():
    p = from_points([(0, 0), (2, 0), (0, 2)])
    assert h_star(p).coeffs == (1, 3, 0)
    assert ehrhart_counts(p, 3) == [1, 6, 15, 28]
    assert interior_counts(p, 3) == [0, 3, 10]
    assert profile(p, 2).counts == (1, 6, 15)
    assert empty_depth(p) == 1


def test_hstar_vector_validation():
    with pytest.raises(ValueError):
        HStarVector(2, (1, 0))
    with pytest.raises(InternalInconsistency):
        HStarVector(2, (1, -1, 0))
    with pytest.raises(InternalInconsistency):
        HStarVector(1, (2, 0))


def lagrange_eval(xs, ys, x):
    total = Fraction(0)
    for i, (xi, yi) in enumerate(zip(xs, ys)):
        term = Fraction(yi)
        for j, xj in enumerate(xs):
            if j != i:
                term *= Fraction(x - xj, xi - xj)
        total += term
    return total


@settings(max_examples=40, deadline=None)
@given(small_polytopes(dims=(1, 2, 3), box=2))
def test_hstar_series_matches_oracle_counts(p):
    n = p.dim
    brute = [1] + [brute_force_count(p, k) for k in range(1, 2 * n + 1)]
    h = h_star(p)
    assert [h.ehrhart(k) for k in range(2 * n + 1)] == brute
    # the Ehrhart polynomial through L(0..n) predicts the brute-force tail
    for k in range(n + 1, 2 * n + 1):
        assert lagrange_eval(range(n + 1), brute[: n + 1], k) == brute[k]


@settings(max_examples=40, deadline=None)
@given(small_polytopes(dims=(2, 3)))
def test_volume_matches_qhull(p):
    from scipy.spatial import ConvexHull

    v = ConvexHull(p.vertices).volume * factorial(p.dim)
    assert normalized_volume(p) == round(v)


@settings(max_examples=40, deadline=None)
@given(small_polytopes())
def test_reciprocity_and_extrapolation_hold(p):
    assert reciprocity_check(p).holds
    assert extrapolation_check(p).holds


@settings(max_examples=40, deadline=None)
@given(small_polytopes())
def test_hstar_invariants(p):
    h = h_star(p)
    n = p.dim
    assert h[0] == 1
    assert h[1] == p.count_points() - n - 1
    assert h[n] == p.count_points(1, interior=True)
    assert degree(p) + empty_depth(p) == n
    assert 0 <= empty_depth(p) <= n


def test_reciprocity_kmax_validation():
    with pytest.raises(ValueError):
        reciprocity_check(cube(3), kmax=2)
