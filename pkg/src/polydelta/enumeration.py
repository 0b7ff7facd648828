"""Exhaustive corpora of small lattice simplices and polygons, random hull
polytopes, and the campaign runner that sweeps checks over a corpus."""

from __future__ import annotations

import logging
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import combinations, product
from math import prod
from typing import Iterable, Sequence

from .geometry import (
    LatticePolytope,
    NotFullDimensional,
    UnsupportedClass,
    _convex_hull_2d,
    canonical_form,
    from_points,
    polygon_area2,
    polygon_boundary_count,
)
from .invariants import (
    equality_case_classify,
    invariant_report,
    run_checks,
)

log = logging.getLogger(__name__)

SCHEMA = "polydelta/1"
MAX_SIMPLEX_DIM = 6
MAX_SIMPLEX_VOLUME = 64
MAX_POLYGON_BOX = 6


class GuardrailExceeded(ValueError):
    pass


@dataclass(frozen=True)
class SimplexCorpusSpec:
    dim: int
    vmax: int

    def __post_init__(self):
        if self.dim < 1 or self.vmax < 1:
            raise ValueError("dim and vmax must be >= 1")


@dataclass(frozen=True)
class PolygonCorpusSpec:
    interior_count: int
    box: int

    def __post_init__(self):
        if self.interior_count < 0 or self.box < 1:
            raise ValueError("interior_count must be >= 0 and box >= 1")


# -- simplices ----------------------------------------------------------------


def _diagonals(n: int, vmax: int):
    if n == 0:
        yield ()
        return
    for d in range(1, vmax + 1):
        for rest in _diagonals(n - 1, vmax // d):
            yield (d,) + rest


def hnf_count(dim: int, vmax: int) -> int:
    """Number of lower-triangular HNF matrices with determinant <= vmax."""
    return sum(prod(d**i for i, d in enumerate(diag)) for diag in _diagonals(dim, vmax))


def _hnf_matrices(n: int, vmax: int):
    for diag in _diagonals(n, vmax):
        ranges = [
            product(range(diag[i]), repeat=i) for i in range(n)
        ]
        for rows in product(*[list(r) for r in ranges]):
            yield tuple(rows[i] + (diag[i],) + (0,) * (n - i - 1) for i in range(n))


def simplex_from_rows(rows: Sequence[Sequence[int]]) -> LatticePolytope:
    n = len(rows)
    return LatticePolytope([(0,) * n] + [tuple(r) for r in rows], n)


def enumerate_simplices(spec: SimplexCorpusSpec, *, max_dim: int = MAX_SIMPLEX_DIM,
                        max_volume: int = MAX_SIMPLEX_VOLUME) -> list[LatticePolytope]:
    """One simplex per equivalence class of lattice ``dim``-simplices with
    normalized volume <= ``vmax``.

    Every lattice simplex with a vertex at the origin can be moved by a
    unimodular map so that its other vertices are the rows of a matrix in
    column-style HNF; all such matrices are generated and deduplicated by
    canonical form.  The representative of each class is the simplex spanned
    by the origin and the rows of its canonical form; classes are ordered by
    (volume, canonical form).
    """
    n, vmax = spec.dim, spec.vmax
    if n > max_dim or vmax > max_volume:
        raise GuardrailExceeded(
            f"dim {n}, vmax {vmax} exceeds guardrail (dim <= {max_dim}, vmax <= {max_volume}); "
            f"estimated {hnf_count(n, vmax)} HNF candidates"
        )
    forms = {}
    for rows in _hnf_matrices(n, vmax):
        form = canonical_form(simplex_from_rows(rows))
        if form not in forms:
            vol = prod(form[i][i] for i in range(n))
            forms[form] = vol
    ordered = sorted(forms, key=lambda f: (forms[f], f))
    return [simplex_from_rows(f) for f in ordered]


# -- polygons -------------------------------------------------------------------


def _cross(o, a, b) -> int:
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def _interior_by_pick(hull: Sequence[tuple]) -> int:
    return (polygon_area2(hull) - polygon_boundary_count(hull) + 2) // 2


def _origin_position(hull: Sequence[tuple]) -> int:
    """1 if the origin is interior, 0 if on the boundary, -1 if outside."""
    m = len(hull)
    o = (0, 0)
    pos = 1
    for i in range(m):
        c = _cross(hull[i], hull[(i + 1) % m], o)
        if c < 0:
            return -1
        if c == 0:
            pos = 0
    return pos


def _inside_closed(hull: Sequence[tuple], p) -> bool:
    m = len(hull)
    return all(_cross(hull[i], hull[(i + 1) % m], p) >= 0 for i in range(m))


def enumerate_polygons(spec: PolygonCorpusSpec, *, max_box: int = MAX_POLYGON_BOX) -> list[LatticePolytope]:
    """One polygon per equivalence class with exactly ``interior_count``
    interior lattice points, grown from triangles.

    For ``interior_count >= 1`` one interior point is placed at the origin
    and all vertices lie in ``[-box, box]^2``.  For ``interior_count == 0``
    the polygon must fit in a ``box x box`` square up to translation.
    Intermediate polygons are pruned as soon as they carry more interior
    points than the target (interior points only accumulate as vertices are
    added).
    """
    c, box = spec.interior_count, spec.box
    if box > max_box:
        raise GuardrailExceeded(f"box {box} exceeds guardrail {max_box}")
    anchored = c >= 1

    if anchored:
        grid = [(x, y) for x in range(-box, box + 1) for y in range(-box, box + 1)]
    else:
        grid = [(x, y) for x in range(-box, 2 * box + 1) for y in range(-box, 2 * box + 1)]

    def normalize(hull):
        if anchored:
            return tuple(hull)
        mx = min(p[0] for p in hull)
        my = min(p[1] for p in hull)
        return tuple(_convex_hull_2d((x - mx, y - my) for x, y in hull))

    def admissible(hull) -> bool:
        if not anchored:
            if max(p[0] for p in hull) - min(p[0] for p in hull) > box:
                return False
            if max(p[1] for p in hull) - min(p[1] for p in hull) > box:
                return False
        inner = _interior_by_pick(hull)
        if inner > c:
            return False
        if anchored:
            pos = _origin_position(hull)
            if pos < 0 or (inner == c and pos != 1):
                return False
        return True

    seeds = set()
    base = [(x, y) for x in range(-box, box + 1) for y in range(-box, box + 1)] if anchored else [
        (x, y) for x in range(box + 1) for y in range(box + 1)
    ]
    for tri in combinations(base, 3):
        if _cross(*tri) == 0:
            continue
        hull = _convex_hull_2d(tri)
        if admissible(hull):
            seeds.add(normalize(hull))

    seen = set(seeds)
    frontier = list(seeds)
    finals = []
    while frontier:
        nxt = []
        for hull in frontier:
            if _interior_by_pick(hull) == c and (not anchored or _origin_position(hull) == 1):
                finals.append(hull)
            for p in grid:
                if _inside_closed(hull, p):
                    continue
                new = _convex_hull_2d(list(hull) + [p])
                if not admissible(new):
                    continue
                key = normalize(new)
                if key not in seen:
                    seen.add(key)
                    nxt.append(key)
        frontier = nxt
    log.info("polygon growth: %d polygons visited, %d with target interior", len(seen), len(finals))

    classes = {}
    for hull in finals:
        poly = LatticePolytope(hull, 2)
        form = canonical_form(poly)
        if form not in classes:
            classes[form] = poly
    out = []
    for form in sorted(classes, key=lambda f: (polygon_area2(classes[f].cyclic_vertices), f)):
        poly = classes[form]
        if poly.count_points(1, interior=True) != c:
            raise AssertionError(f"enumerated polygon {poly} has wrong interior count")
        out.append(poly)
    return out


# -- random hulls -----------------------------------------------------------------


def random_polytopes(dim: int, count: int, box: int, seed: int = 0,
                     extra_points: int = 3) -> list[LatticePolytope]:
    """``count`` full-dimensional hulls of random points in ``[0, box]^dim``;
    degenerate samples are discarded and redrawn."""
    rng = random.Random(f"{seed}:{dim}:{box}")
    out = []
    while len(out) < count:
        m = rng.randint(dim + 1, dim + 1 + extra_points)
        pts = [tuple(rng.randint(0, box) for _ in range(dim)) for _ in range(m)]
        try:
            out.append(from_points(pts, dim))
        except NotFullDimensional:
            continue
    return out


# -- campaigns ---------------------------------------------------------------------


@dataclass
class CampaignReport:
    corpus_size: int
    checks: list[str]
    tallies: dict = field(default_factory=dict)
    equality_cases: list = field(default_factory=list)
    violations: list = field(default_factory=list)
    extra: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "schema": SCHEMA,
            "corpus_size": self.corpus_size,
            "checks": self.checks,
            "tallies": self.tallies,
            "equality_cases": self.equality_cases,
            "violations": self.violations,
            **self.extra,
        }

    def failures(self, name: str) -> int:
        return self.tallies.get(name, {}).get("fail", 0)


def _form_or_none(p: LatticePolytope):
    try:
        return [list(r) for r in canonical_form(p)]
    except UnsupportedClass:
        return None


def evaluate(args) -> dict:
    """Full evaluation of one corpus member (module-level for pickling)."""
    p, checks, normality = args
    report = invariant_report(p, normality=normality)
    results = run_checks(p, checks)
    out = {
        "vertices": [list(v) for v in p.vertices],
        "report": report.to_dict(),
        "checks": [r.to_dict() for r in results],
    }
    main = next((r for r in results if r.name == "main_inequality"), None)
    if main is not None and main.detail.get("equality"):
        out["equality"] = equality_case_classify(p).to_dict()
        out["canonical_form"] = _form_or_none(p)
    return out


def run_campaign(corpus: Sequence[LatticePolytope], checks: Iterable[str], *, jobs: int = 1,
                 normality: bool = False) -> CampaignReport:
    """Evaluate every polytope; tallies count pass/fail/n.a. per check.

    Output is independent of ``jobs``: results are merged in input order.
    """
    corpus = list(corpus)
    if not corpus:
        raise ValueError("empty corpus")
    checks = list(checks)
    work = [(p, checks, normality) for p in corpus]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(evaluate, work, chunksize=max(1, len(work) // (8 * jobs))))
    else:
        results = [evaluate(w) for w in work]

    tallies: dict = {}
    equality, violations = [], []
    for res in results:
        failed = []
        for chk in res["checks"]:
            t = tallies.setdefault(chk["name"], {"pass": 0, "fail": 0, "not_applicable": 0})
            if chk["holds"] is None:
                t["not_applicable"] += 1
            elif chk["holds"]:
                t["pass"] += 1
            else:
                t["fail"] += 1
                failed.append(chk)
        if "equality" in res:
            equality.append(
                {
                    "vertices": res["vertices"],
                    "canonical_form": res["canonical_form"],
                    "classification": res["equality"],
                    "e": res["report"]["e"],
                }
            )
        if failed:
            violations.append(
                {
                    "vertices": res["vertices"],
                    "canonical_form": _form_or_none(LatticePolytope(res["vertices"], len(res["vertices"][0]))),
                    "report": res["report"],
                    "failed": failed,
                }
            )
    return CampaignReport(len(corpus), checks, tallies, equality, violations)
