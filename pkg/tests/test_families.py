import random

import pytest

from polydelta.ehrhart import degree, empty_depth, h_star, normalized_volume
from polydelta.families import (
    EXCEPTIONAL,
    LAWRENCE,
    NOT_DEGREE_ONE,
    BadParams,
    FamilySpec,
    basic,
    build,
    classify_degree_one,
    delta2,
    delta2n,
    delta25,
    delta_star,
    exceptional,
    fano_pyramid,
    koelman_quad,
    koelman_triangle,
    lawrence_layout,
    lawrence_prism,
)
from polydelta.geometry import is_equivalent
from polydelta.invariants import delta_genus, main_inequality


def test_delta_star_vertices():
    assert set(delta_star(3).vertices) == {(1, 0, 0), (0, 1, 0), (0, 0, 1), (-1, -1, -1)}


@pytest.mark.parametrize("n", [3, 4, 5, 6])
def test_delta_star_table(n):
    p = delta_star(n)
    assert h_star(p).coeffs == (1,) * (n + 1)
    assert normalized_volume(p) == n + 1
    assert p.count_points() == n + 2
    assert delta_genus(p) == n - 1


@pytest.mark.parametrize("n", [3, 4, 5])
def test_delta2_table(n):
    p = delta2(n)
    assert empty_depth(p) == n - 2
    assert p.count_points() - normalized_volume(p) == n - 1
    assert main_inequality(p).detail["equality"]


@pytest.mark.parametrize("n", [4, 5, 6])
def test_delta2n_table(n):
    p = delta2n(n)
    assert normalized_volume(p) == 2
    assert p.count_points() == n + 1
    assert empty_depth(p) == n // 2
    assert main_inequality(p).holds == (n < 5)


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_basic_table(n):
    assert h_star(basic(n)).coeffs == (1,) + (0,) * n
    assert empty_depth(basic(n)) == n


def test_delta25_is_delta2n_in_dim5():
    assert is_equivalent(delta25(5), delta2n(5))


@pytest.mark.parametrize("call", [
    lambda: basic(0),
    lambda: delta2(2),
    lambda: delta2n(3),
    lambda: delta25(4),
    lambda: lawrence_prism([1, 2, 1]),
    lambda: lawrence_prism([1, 0]),
    lambda: lawrence_prism([0, 0, 1]),
    lambda: exceptional(1),
    lambda: koelman_quad(1, 0),
    lambda: koelman_quad(0, 3),
    lambda: fano_pyramid([(0, 0), (1, 0), (0, 1)]),
])
def test_bad_params(call):
    with pytest.raises(BadParams):
        call()


def test_bad_params_message():
    with pytest.raises(BadParams, match="koelman_quad requires a\\+b >= 2"):
        koelman_quad(1, 0)


def test_build_dispatch():
    assert build(FamilySpec("delta_star", 3)) == delta_star(3)
    assert build(FamilySpec("lawrence_prism", 2, (1, 1))) == lawrence_prism((1, 1))
    assert build(FamilySpec("koelman_quad", 2, (2, 1))) == koelman_quad(2, 1)
    tri = (-1, -1, 1, 0, 0, 1)
    assert build(FamilySpec("fano_pyramid", 3, tri)).dim == 3
    with pytest.raises(BadParams):
        build(FamilySpec("nope", 2))


def random_lawrence_params(rng):
    n = rng.randint(1, 5)
    while True:
        head = sorted((rng.randint(0, 6) for _ in range(n - 1)), reverse=True)
        a = tuple(head) + (rng.randint(1, 6),)
        if sum(a) >= 2:
            return a


def test_lawrence_degree_one_and_roundtrip():
    rng = random.Random(7)
    for _ in range(60):
        a = random_lawrence_params(rng)
        p = lawrence_prism(a)
        n = len(a)
        assert degree(p) == 1
        assert p.count_points() == normalized_volume(p) + n
        cls = classify_degree_one(p)
        assert cls.kind == LAWRENCE
        assert cls.params == tuple(sorted(a, reverse=True))
        if p.is_simplex or n <= 2:
            assert is_equivalent(lawrence_prism(lawrence_layout(cls.params)), p)


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_exceptional(n):
    p = exceptional(n)
    assert degree(p) == 1
    assert p.count_points() == normalized_volume(p) + n
    assert classify_degree_one(p).kind == EXCEPTIONAL
    if n == 2:
        assert p == koelman_triangle()


def test_classify_not_degree_one():
    assert classify_degree_one(delta_star(3)).kind == NOT_DEGREE_ONE


def test_koelman_quad_is_lawrence():
    cls = classify_degree_one(koelman_quad(2, 1))
    assert (cls.kind, cls.params) == (LAWRENCE, (2, 1))


def test_fano_pyramid_is_e1_equality_case():
    p = fano_pyramid([(-1, -1), (1, 0), (0, 1)])
    assert empty_depth(p) == 1
    assert main_inequality(p).detail["equality"]
