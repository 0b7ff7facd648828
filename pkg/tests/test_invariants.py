import random
from itertools import product

import pytest
from hypothesis import given, settings

from conftest import random_unimodular, small_polytopes
from polydelta.families import basic, delta2, delta25, delta_star, koelman_quad, koelman_triangle
from polydelta.geometry import from_points
from polydelta.invariants import (
    DEGREE_AT_MOST_ONE,
    DEL_PEZZO,
    EXCEEDS_CAP,
    FANO,
    NOT_COMPUTED,
    NotAnEqualityCase,
    check_basic_iff_depth,
    check_lemma31,
    check_lemma32,
    check_lemma33,
    check_lemma51,
    check_prop5,
    check_tabei_polygon,
    delta_genus,
    equality_case_classify,
    identity_suite,
    invariant_report,
    is_basic_simplex,
    is_k_normal,
    is_normal,
    kappa,
    lambda_,
    main_inequality,
    regularity,
    run_checks,
)

SQUARE = from_points([(0, 0), (1, 0), (0, 1), (1, 1)])


def naive_step(p, k):
    # oracle for (kP∩M) + (P∩M) = ((k+1)P)∩M: membership by halfspaces over a box
    pts = list(p.points(1))
    kp = [x for x in product(*[range(-k * 3, k * 3 + 1)] * p.dim) if p.halfspaces.contains(x, k)]
    sums = {tuple(a + b for a, b in zip(x, y)) for x in kp for y in pts}
    target = [x for x in product(*[range(-(k + 1) * 3, (k + 1) * 3 + 1)] * p.dim)
              if p.halfspaces.contains(x, k + 1)]
    return sums == set(target)


def test_delta_genus_examples():
    assert delta_genus(delta_star(3)) == 2
    for n in range(1, 6):
        assert delta_genus(basic(n)) == 0
    assert delta_genus(delta2(3)) == 1


def test_lambda_examples():
    for n in range(2, 6):
        assert lambda_(delta_star(n)) == 1
        assert lambda_(basic(n)) == n + 1
    assert lambda_(delta2(4)) == 3


def test_kappa_examples():
    assert kappa(basic(3)) == 1
    assert kappa(SQUARE) == 1
    assert kappa(delta2(3)) == 2
    assert not naive_step(delta2(3), 1) and naive_step(delta2(3), 2)


def test_kappa_delta_star3_matches_oracle():
    p = delta_star(3)
    fails = [k for k in (1, 2) if not naive_step(p, k)]
    want = 1 + max(fails) if fails else 1
    assert kappa(p) == want
    assert regularity(p) == max(want + 1, 4)


def test_kappa_exceeds_cap():
    # Δ₂³ fails at k = 1, so with cap 1 the answer is not determined
    assert kappa(delta2(3), cap=1) == EXCEEDS_CAP
    with pytest.raises(ValueError):
        regularity(delta2(3), cap=1)
    with pytest.raises(ValueError):
        kappa(basic(2), cap=0)


def test_k_normality():
    r = is_k_normal(delta2(3), 2)
    assert not r.holds and r.witness is not None
    assert r.witness in delta2(3).points(2)
    assert is_k_normal(SQUARE, 7).holds
    assert is_k_normal(delta2(3), 1).holds
    assert is_normal(SQUARE) and is_normal(basic(3))
    for n in (3, 4):
        assert not is_normal(delta2(n))


def test_regularity_examples():
    for n in range(1, 5):
        assert regularity(basic(n)) == 2
    assert regularity(SQUARE) == 2
    assert regularity(delta2(3)) == 3


def test_main_inequality_examples():
    r = main_inequality(delta2(3))
    assert (r.lhs, r.rhs, r.holds, r.detail["equality"]) == (2, 2, True, True)
    r = main_inequality(delta25(5))
    assert (r.lhs, r.rhs, r.holds) == (4, 3, False)
    r = main_inequality(koelman_quad(1, 1))
    assert (r.lhs, r.rhs, r.detail["equality"]) == (2, 2, True)


def by_name(reports):
    return {r.name: r for r in reports}


def test_identity_suite_delta_star3():
    rep = by_name(identity_suite(delta_star(3)))
    assert all(r.holds is not False for r in rep.values())
    assert rep["pick"].holds is None
    assert rep["hibi"].holds is True
    assert rep["bn1"].detail == {"count_eq_v_plus_n": False, "degree_le_1": False}


def test_identity_suite_triangle():
    rep = by_name(identity_suite(koelman_triangle()))
    assert rep["pick"].holds and (rep["pick"].lhs, rep["pick"].rhs) == (4, 4)
    assert rep["bn1"].detail == {"count_eq_v_plus_n": True, "degree_le_1": True}
    assert rep["hibi"].holds is None


def test_identity_suite_basic():
    for n in range(1, 5):
        assert all(r.holds is not False for r in identity_suite(basic(n)))


def test_basic_simplex_predicate():
    assert is_basic_simplex(basic(3))
    assert not is_basic_simplex(delta2(3))
    assert not is_basic_simplex(SQUARE)


def test_equality_case_examples():
    assert equality_case_classify(delta2(3)).kind == DEL_PEZZO
    assert equality_case_classify(delta_star(3)).kind == FANO
    assert equality_case_classify(koelman_triangle()).kind == DEGREE_AT_MOST_ONE
    with pytest.raises(NotAnEqualityCase):
        equality_case_classify(basic(2))


def test_named_theorem_checks_on_families():
    assert check_prop5(delta_star(3)).holds and check_prop5(delta_star(3)).detail["is_delta_star"]
    assert check_prop5(basic(3)).holds is None
    assert check_lemma51(delta2(3)).holds
    assert check_lemma51(delta2(3)).detail["interior_count_(n-1)P"] == 1
    assert check_basic_iff_depth(basic(4)).holds
    assert check_lemma31(delta2(4)).holds
    assert check_lemma32(basic(3)).holds
    assert check_lemma33(basic(3)).holds
    assert check_tabei_polygon(koelman_triangle()).holds
    assert check_tabei_polygon(basic(2)).holds


def test_report_fields():
    rep = invariant_report(delta_star(3)).to_dict()
    assert rep["h_star"] == [1, 1, 1, 1]
    assert rep["delta_genus"] == 2 and rep["lambda"] == 1 and rep["e"] == 0
    assert rep["point_count"] == 5 and rep["interior_count"] == 1 and rep["v"] == 4
    lite = invariant_report(delta_star(3), normality=False)
    assert lite.kappa == NOT_COMPUTED and lite.is_normal == NOT_COMPUTED


@settings(max_examples=60, deadline=None)
@given(small_polytopes())
def test_inequality_phrasings_agree(p):
    r = main_inequality(p)
    n = p.dim
    assert delta_genus(p) == n - r.lhs
    assert r.holds == (delta_genus(p) >= n - lambda_(p))


@settings(max_examples=60, deadline=None)
@given(small_polytopes(dims=(2, 3)))
def test_low_dimensional_inequality_and_suite(p):
    assert main_inequality(p).holds
    assert all(r.holds is not False for r in identity_suite(p))
    assert all(r.holds is not False for r in run_checks(
        p, ["prop5", "lemma51", "lemma31", "lemma32", "lemma33", "basic_iff_e_eq_n", "tabei_polygon"]))


@settings(max_examples=40, deadline=None)
@given(small_polytopes(dims=(2,)))
def test_polygons_are_normal(p):
    assert is_normal(p, cap=3)


@settings(max_examples=30, deadline=None)
@given(small_polytopes(dims=(1, 2, 3), box=2))
def test_report_invariant_under_unimodular_maps(p):
    rng = random.Random(hash(p.vertices))
    u = random_unimodular(rng, p.dim)
    t = [rng.randint(-4, 4) for _ in range(p.dim)]
    assert invariant_report(p.transform(u, t)) == invariant_report(p)
