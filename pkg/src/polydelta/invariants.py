"""Δ-genus, the adjoint threshold λ, the normality threshold κ, regularity,
and the named inequalities and identities as witness-bearing checks."""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Iterable

from .ehrhart import (
    HStarVector,
    empty_depth,
    extrapolation_check,
    h_star,
    normalized_volume,
    reciprocity_check,
)
from .geometry import (
    LatticePolytope,
    UnsupportedClass,
    canonical_form,
    minkowski_sum,
)
from .lattice import determinant
from .report import CheckReport

EXCEEDS_CAP = "exceeds cap"
NOT_COMPUTED = "not computed"


def default_cap(p: LatticePolytope) -> int:
    # Failures of (kP∩M) + (P∩M) = ((k+1)P)∩M cannot first occur at k >= n - 1.
    return max(1, p.dim - 1)


def point_count(p: LatticePolytope) -> int:
    return p.count_points(1)


def interior_count(p: LatticePolytope) -> int:
    return p.count_points(1, interior=True)


def delta_genus(p: LatticePolytope) -> int:
    return p.dim + normalized_volume(p) - point_count(p)


def lambda_(p: LatticePolytope) -> int:
    """First k >= 1 with an interior lattice point in kP; equals e(P) + 1."""
    return empty_depth(p) + 1


def _step_holds(p: LatticePolytope, k: int) -> bool:
    # the sum is always contained in (k+1)P ∩ M, so comparing sizes suffices
    return len(minkowski_sum(p.points(k), p.points(1))) == p.count_points(k + 1)


def kappa(p: LatticePolytope, cap: int | None = None) -> int | str:
    """1 + the last k <= cap with (kP∩M) + (P∩M) != ((k+1)P)∩M, or 1.

    Returns ``EXCEEDS_CAP`` if the check still fails at ``k == cap``.
    """
    cap = default_cap(p) if cap is None else cap
    if cap < 1:
        raise ValueError("cap must be >= 1")
    last_fail = 0
    for k in range(1, cap + 1):
        if not _step_holds(p, k):
            last_fail = k
    if last_fail == cap:
        return EXCEEDS_CAP
    return last_fail + 1


def k_fold_sum(p: LatticePolytope, k: int) -> frozenset:
    base = p.points(1)
    acc = set(base)
    for _ in range(k - 1):
        acc = {tuple(x + y for x, y in zip(a, b)) for a in acc for b in base}
    return frozenset(acc)


def is_k_normal(p: LatticePolytope, k: int) -> CheckReport:
    if k < 1:
        raise ValueError("k must be >= 1")
    full = p.points(k)
    sums = k_fold_sum(p, k)
    missing = sorted(set(full) - sums)
    return CheckReport(
        f"{k}-normal",
        not missing,
        lhs=len(sums),
        rhs=len(full),
        witness=missing[0] if missing else None,
    )


def is_normal(p: LatticePolytope, cap: int | None = None) -> bool:
    cap = default_cap(p) if cap is None else cap
    return all(is_k_normal(p, k).holds for k in range(1, cap + 1))


def regularity(p: LatticePolytope, cap: int | None = None) -> int:
    k = kappa(p, cap)
    if k == EXCEEDS_CAP:
        raise ValueError("κ exceeds the cap; regularity undetermined")
    return max(k + 1, p.dim + 2 - lambda_(p))


@dataclass(frozen=True)
class InvariantReport:
    dim: int
    point_count: int
    interior_count: int
    v: int
    h_star: tuple[int, ...]
    e: int
    degree: int
    delta_genus: int
    lambda_: int
    kappa: int | str = NOT_COMPUTED
    regularity: int | str = NOT_COMPUTED
    is_normal: bool | str = NOT_COMPUTED

    def to_dict(self) -> dict:
        return {
            "dim": self.dim,
            "point_count": self.point_count,
            "interior_count": self.interior_count,
            "v": self.v,
            "h_star": list(self.h_star),
            "e": self.e,
            "degree": self.degree,
            "delta_genus": self.delta_genus,
            "lambda": self.lambda_,
            "kappa": self.kappa,
            "regularity": self.regularity,
            "is_normal": self.is_normal,
            # Eisenbud–Goto bound deg X - codim X + 1, display only
            "eisenbud_goto_bound": self.v - (self.point_count - 1 - self.dim) + 1,
        }


def invariant_report(p: LatticePolytope, *, normality: bool = True, cap: int | None = None) -> InvariantReport:
    h = h_star(p)
    v = normalized_volume(p)
    e = empty_depth(p)
    count = point_count(p)
    k = reg = norm = NOT_COMPUTED
    if normality:
        k = kappa(p, cap)
        reg = max(k + 1, p.dim + 2 - (e + 1)) if k != EXCEEDS_CAP else NOT_COMPUTED
        norm = is_normal(p, cap)
    return InvariantReport(
        dim=p.dim,
        point_count=count,
        interior_count=interior_count(p),
        v=v,
        h_star=h.coeffs,
        e=e,
        degree=h.degree,
        delta_genus=p.dim + v - count,
        lambda_=e + 1,
        kappa=k,
        regularity=reg,
        is_normal=norm,
    )


# -- the inequality ------------------------------------------------------------


def main_inequality(p: LatticePolytope) -> CheckReport:
    """``#(P∩M) - v(P) <= e(P) + 1``, i.e. ``Δ(P) >= n - λ``."""
    n = p.dim
    count = point_count(p)
    v = normalized_volume(p)
    e = empty_depth(p)
    lhs, rhs = count - v, e + 1
    genus_form = (n + v - count) >= n - (e + 1)
    holds = lhs <= rhs
    if genus_form != holds:
        raise AssertionError("the two phrasings of the inequality disagree")
    return CheckReport(
        "main_inequality",
        holds,
        lhs,
        rhs,
        detail={"equality": lhs == rhs, "delta_genus": n + v - count, "lambda": e + 1},
    )


def _bruns_herzog(h: HStarVector, e: int) -> CheckReport:
    s = h.n - e
    for l in range(s // 2 + 1):
        top = sum(h[s - i] for i in range(l + 1))
        bottom = sum(h[i] for i in range(l + 1))
        if top < bottom:
            return CheckReport("bruns_herzog", False, top, bottom, detail={"l": l})
    return CheckReport("bruns_herzog", True, detail={"lmax": s // 2})


def identity_suite(p: LatticePolytope) -> list[CheckReport]:
    n = p.dim
    h = h_star(p)
    v = normalized_volume(p)
    e = empty_depth(p)
    count = point_count(p)
    inner = interior_count(p)
    inner2 = p.count_points(2, interior=True)
    out = [
        CheckReport("eq_points_h1", count == h[1] + n + 1, count, h[1] + n + 1),
        CheckReport("eq_interior_hn", inner == h[n], inner, h[n]),
        CheckReport(
            "eq_interior_2P",
            inner2 == h[n - 1] + (n + 1) * h[n],
            inner2,
            h[n - 1] + (n + 1) * h[n],
        ),
        CheckReport("h1_ge_hn", h[1] >= h[n], h[1], h[n]),
        CheckReport("hstar_sum_is_volume", h.volume == v, h.volume, v),
        CheckReport("degree_plus_depth", h.degree + e == n, h.degree + e, n),
    ]
    if n == 2:
        boundary = count - inner
        out.append(CheckReport("pick", v == 2 * count - boundary - 2, v, 2 * count - boundary - 2))
    else:
        out.append(CheckReport("pick", None, detail={"reason": "dimension != 2"}))
    out.append(_bruns_herzog(h, e))
    if inner:
        bad = [i for i in range(2, n) if h[i] < h[1]]
        out.append(
            CheckReport("hibi", not bad, witness=bad[0] if bad else None, detail={"h_star": list(h.coeffs)})
        )
    else:
        out.append(CheckReport("hibi", None, detail={"reason": "no interior lattice point"}))
    left = count == v + n
    right = h.degree <= 1
    out.append(CheckReport("bn1", left == right, detail={"count_eq_v_plus_n": left, "degree_le_1": right}))
    return out


def is_basic_simplex(p: LatticePolytope) -> bool:
    return p.is_simplex and normalized_volume(p) == 1


def is_empty_simplex(p: LatticePolytope) -> bool:
    return p.is_simplex and point_count(p) == p.dim + 1


def facets_basic(p: LatticePolytope) -> bool:
    """Every facet of a simplex is a unimodular simplex in its own lattice."""
    n = p.dim
    verts = p.vertices
    for skip in range(n + 1):
        face = [v for i, v in enumerate(verts) if i != skip]
        rows = [tuple(a - b for a, b in zip(v, face[0])) for v in face[1:]]
        g = 0
        for j in range(n):
            g = gcd(g, determinant([[r[c] for c in range(n) if c != j] for r in rows]))
        if g != 1:
            return False
    return True


# -- equality cases --------------------------------------------------------------

DEGREE_AT_MOST_ONE = "DegreeAtMostOne"
DEL_PEZZO = "DelPezzoCase"
FANO = "FanoCase"
OTHER = "Other"


class NotAnEqualityCase(ValueError):
    pass


@dataclass(frozen=True)
class EqualityCase:
    kind: str
    method: str
    detail: dict

    def to_dict(self) -> dict:
        return {"kind": self.kind, "method": self.method, "detail": self.detail}


def equality_case_classify(p: LatticePolytope) -> EqualityCase:
    from .families import delta_star

    rep = main_inequality(p)
    if not rep.detail["equality"]:
        raise NotAnEqualityCase(f"lhs {rep.lhs} != rhs {rep.rhs}")
    n = p.dim
    e = empty_depth(p)
    if e >= n - 1:
        return EqualityCase(DEGREE_AT_MOST_ONE, "h*", {"e": e, "degree": n - e})
    if n >= 3 and e == n - 2:
        inner = p.count_points(n - 1, interior=True)
        closed = p.count_points(n - 1)
        detail = {"e": e, "interior_count_(n-1)P": inner, "closed_count_(n-1)P": closed}
        if inner == 1:
            return EqualityCase(DEL_PEZZO, "interior count", detail)
        return EqualityCase(OTHER, "interior count", detail)
    if n >= 3 and e == 0:
        if p.is_simplex:
            same = canonical_form(p) == canonical_form(delta_star(n))
            return EqualityCase(FANO if same else OTHER, "canonical_form", {"e": 0})
        h = h_star(p)
        same = all(c == 1 for c in h.coeffs) and point_count(p) == n + 2
        return EqualityCase(FANO if same else OTHER, "fingerprint", {"e": 0, "h_star": list(h.coeffs)})
    return EqualityCase(OTHER, "none", {"e": e})


# -- theorem checks used by campaigns -----------------------------------------


def check_prop5(p: LatticePolytope) -> CheckReport:
    """With an interior point: Δ >= n - 1, equality (n >= 3) iff P ≅ Δ*^n."""
    from .families import delta_star

    n = p.dim
    if not interior_count(p):
        return CheckReport("prop5", None, detail={"reason": "no interior lattice point"})
    d = delta_genus(p)
    holds = d >= n - 1
    detail = {"equality": d == n - 1}
    if holds and n >= 3:
        iso = p.is_simplex and canonical_form(p) == canonical_form(delta_star(n))
        holds = (d == n - 1) == iso
        detail["is_delta_star"] = iso
    return CheckReport("prop5", holds, d, n - 1, detail=detail)


def check_lemma51(p: LatticePolytope) -> CheckReport:
    n = p.dim
    if n < 3 or empty_depth(p) != n - 2:
        return CheckReport("lemma51", None)
    rep = main_inequality(p)
    inner = p.count_points(n - 1, interior=True)
    holds = rep.holds and (rep.lhs == rep.rhs) == (inner == 1)
    return CheckReport(
        "lemma51",
        holds,
        rep.lhs,
        rep.rhs,
        detail={
            "interior_count_(n-1)P": inner,
            "closed_count_(n-1)P": p.count_points(n - 1),
        },
    )


def check_lemma52(p: LatticePolytope) -> CheckReport:
    """e = n - 3, n >= 4: inequality holds unless n >= 5 and P ≅ Δ_{2,5}^n."""
    from .families import delta25

    n = p.dim
    if n < 4 or empty_depth(p) != n - 3:
        return CheckReport("lemma52", None)
    rep = main_inequality(p)
    if rep.holds:
        return CheckReport("lemma52", True, rep.lhs, rep.rhs)
    exceptional = n >= 5 and p.is_simplex and canonical_form(p) == canonical_form(delta25(n))
    return CheckReport("lemma52", exceptional, rep.lhs, rep.rhs, detail={"is_delta25": exceptional})


def check_basic_iff_depth(p: LatticePolytope) -> CheckReport:
    basic = is_basic_simplex(p)
    full = empty_depth(p) == p.dim
    return CheckReport("basic_iff_e_eq_n", basic == full, detail={"basic": basic, "e_eq_n": full})


def check_lemma31(p: LatticePolytope, cap: int | None = None) -> CheckReport:
    """If int(rP)∩M = ∅ for some 1 <= r <= n-1 then (kP∩M)+(P∩M) = ((k+1)P)∩M
    for n - r <= k <= cap."""
    n = p.dim
    r = min(empty_depth(p), n - 1)
    if r < 1:
        return CheckReport("lemma31", None)
    cap = n if cap is None else cap
    for k in range(n - r, cap + 1):
        if not _step_holds(p, k):
            return CheckReport("lemma31", False, detail={"k": k, "r": r})
    return CheckReport("lemma31", True, detail={"r": r, "kmin": n - r, "cap": cap})


def check_lemma32(p: LatticePolytope) -> CheckReport:
    n = p.dim
    if n < 2 or not is_empty_simplex(p) or p.count_points(n - 1, interior=True):
        return CheckReport("lemma32", None)
    return CheckReport("lemma32", normalized_volume(p) == 1, normalized_volume(p), 1)


def check_lemma33(p: LatticePolytope) -> CheckReport:
    n = p.dim
    if not is_empty_simplex(p) or 2 * empty_depth(p) < n or not facets_basic(p):
        return CheckReport("lemma33", None)
    return CheckReport("lemma33", normalized_volume(p) == 1, normalized_volume(p), 1)


def check_tabei_polygon(p: LatticePolytope) -> CheckReport:
    """Dimension 2: equality iff P is not basic and has at most one interior point."""
    if p.dim != 2:
        return CheckReport("tabei_polygon", None)
    rep = main_inequality(p)
    predicted = not is_basic_simplex(p) and interior_count(p) <= 1
    return CheckReport(
        "tabei_polygon",
        rep.holds and rep.detail["equality"] == predicted,
        rep.lhs,
        rep.rhs,
    )


def named_checks() -> dict:
    return {
        "main_inequality": main_inequality,
        "reciprocity": reciprocity_check,
        "extrapolation": extrapolation_check,
        "prop5": check_prop5,
        "lemma51": check_lemma51,
        "lemma52": check_lemma52,
        "lemma31": check_lemma31,
        "lemma32": check_lemma32,
        "lemma33": check_lemma33,
        "basic_iff_e_eq_n": check_basic_iff_depth,
        "tabei_polygon": check_tabei_polygon,
    }


def run_checks(p: LatticePolytope, names: Iterable[str]) -> list[CheckReport]:
    table = named_checks()
    out = []
    for name in names:
        if name == "identities":
            out.extend(identity_suite(p))
        else:
            out.append(table[name](p))
    return out


__all__ = [
    "EXCEEDS_CAP",
    "InvariantReport",
    "UnsupportedClass",
    "delta_genus",
    "equality_case_classify",
    "identity_suite",
    "invariant_report",
    "is_basic_simplex",
    "is_k_normal",
    "is_normal",
    "kappa",
    "lambda_",
    "main_inequality",
    "regularity",
]
