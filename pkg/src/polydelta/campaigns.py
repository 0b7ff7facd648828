"""Named verification campaigns: corpus + checks + verdict."""

from __future__ import annotations

from dataclasses import dataclass

from .ehrhart import empty_depth, normalized_volume
from .enumeration import (
    CampaignReport,
    PolygonCorpusSpec,
    SimplexCorpusSpec,
    enumerate_polygons,
    enumerate_simplices,
    random_polytopes,
    run_campaign,
)
from .families import delta25, fano_pyramid, koelman_quad, koelman_triangle
from .geometry import canonical_form
from .invariants import DEGREE_AT_MOST_ONE, DEL_PEZZO, FANO

THEOREMS = ("A", "BN1", "koelman", "fano16", "tabei3", "prop5", "lemma51", "lemma52")

# random hull boxes per dimension, all within the box <= 4 budget
RANDOM_BOX = {1: 4, 2: 4, 3: 3, 4: 2}


@dataclass
class Verdict:
    ok: bool
    report: dict


def simplex_corpus(dims, vmax: int):
    out = []
    for d in dims:
        out.extend(enumerate_simplices(SimplexCorpusSpec(d, vmax)))
    return out


def random_corpus(dims, count: int, seed: int = 0):
    """``count`` random hulls split evenly over ``dims``."""
    dims = list(dims)
    out = []
    for i, d in enumerate(dims):
        share = count // len(dims) + (1 if i < count % len(dims) else 0)
        if share:
            out.extend(random_polytopes(d, share, RANDOM_BOX.get(d, 2), seed=seed))
    return out


def fano_polygons(box: int = 4):
    return enumerate_polygons(PolygonCorpusSpec(1, box))


def fano_pyramids(box: int = 4):
    return [fano_pyramid(p.cyclic_vertices) for p in fano_polygons(box)]


def _result(rep: CampaignReport, ok: bool, **extra) -> Verdict:
    rep.extra.update(extra)
    d = rep.to_dict()
    d["holds"] = ok
    return Verdict(ok, d)


def verify(theorem: str, *, dim: int | None = None, vmax: int | None = None, box: int | None = None,
           jobs: int = 1, random_count: int = 0, seed: int = 0) -> Verdict:
    if theorem not in THEOREMS:
        raise ValueError(f"unknown theorem {theorem!r}; choose from {', '.join(THEOREMS)}")

    if theorem == "A":
        dim = 4 if dim is None else dim
        if not 1 <= dim <= 4:
            raise ValueError("theorem A concerns dimension <= 4")
        corpus = simplex_corpus(range(1, dim + 1), 12 if vmax is None else vmax)
        corpus += random_corpus(range(2, dim + 1), random_count, seed)
        rep = run_campaign(corpus, ["main_inequality"], jobs=jobs)
        return _result(rep, rep.failures("main_inequality") == 0, theorem="A")

    if theorem == "BN1":
        dim = 4 if dim is None else dim
        corpus = simplex_corpus(range(1, dim + 1), 12 if vmax is None else vmax)
        corpus += random_corpus(range(2, min(dim, 4) + 1), random_count, seed)
        rep = run_campaign(corpus, ["identities"], jobs=jobs)
        return _result(rep, rep.failures("bn1") == 0, theorem="BN1")

    if theorem in ("prop5", "lemma51"):
        dim = 4 if dim is None else dim
        lo = 1 if theorem == "prop5" else 3
        corpus = simplex_corpus(range(lo, dim + 1), 12 if vmax is None else vmax)
        corpus += random_corpus(range(max(lo, 2), min(dim, 4) + 1), random_count, seed)
        rep = run_campaign(corpus, [theorem], jobs=jobs)
        return _result(rep, rep.failures(theorem) == 0, theorem=theorem)

    if theorem == "lemma52":
        dim = 5 if dim is None else dim
        corpus = simplex_corpus([dim], 2 if vmax is None else vmax)
        rep = run_campaign(corpus, ["main_inequality", "lemma52"], jobs=jobs)
        bad = [v for v in rep.violations if any(c["name"] == "main_inequality" for c in v["failed"])]
        flagged = []
        if dim >= 5:
            target = [list(r) for r in canonical_form(delta25(dim))]
            flagged = [v["canonical_form"] == target for v in bad]
        return _result(
            rep,
            rep.failures("lemma52") == 0,
            theorem="lemma52",
            violating_classes=len(bad),
            violations_equivalent_to_delta25=flagged,
        )

    if theorem == "fano16":
        box = 4 if box is None else box
        polys = fano_polygons(box)
        rep = run_campaign(polys, ["main_inequality", "identities"], jobs=jobs)
        return _result(rep, len(polys) == 16, theorem="fano16", classes=len(polys), box=box)

    if theorem == "koelman":
        box = 3 if box is None else box
        polys = enumerate_polygons(PolygonCorpusSpec(0, box))
        depth_one = [p for p in polys if empty_depth(p) == 1]
        matches = [koelman_match(p) for p in depth_one]
        rep = run_campaign(polys, ["main_inequality", "identities"], jobs=jobs)
        return _result(
            rep,
            all(m is not None for m in matches),
            theorem="koelman",
            classes=len(polys),
            depth_one_classes=len(depth_one),
            matches=matches,
        )

    if theorem == "tabei3":
        corpus = simplex_corpus([3], 12 if vmax is None else vmax)
        pyramids = fano_pyramids(4 if box is None else box)
        corpus += pyramids + random_corpus([3], random_count, seed)
        rep = run_campaign(corpus, ["main_inequality"], jobs=jobs)
        expected = {2: DEGREE_AT_MOST_ONE, 1: DEL_PEZZO, 0: FANO}
        trichotomy = all(
            expected.get(c["e"]) == c["classification"]["kind"] for c in rep.equality_cases
        )
        eq_vertices = {tuple(map(tuple, c["vertices"])) for c in rep.equality_cases if c["e"] == 1}
        pyramids_ok = all(p.vertices in eq_vertices for p in pyramids)
        return _result(
            rep,
            rep.failures("main_inequality") == 0 and trichotomy and pyramids_ok,
            theorem="tabei3",
            trichotomy=trichotomy,
            pyramids=len(pyramids),
            pyramids_in_e1_equality=pyramids_ok,
        )
    raise AssertionError(theorem)


def koelman_match(p):
    """``{"a": a, "b": b}`` or ``{"triangle": true}`` when ``p`` is equivalent
    to a Koelman quadrilateral or conv{0,(0,2),(2,0)}; otherwise None."""
    form = canonical_form(p)
    v = normalized_volume(p)
    if form == canonical_form(koelman_triangle()):
        return {"triangle": True}
    for a in range(1, v + 1):
        b = v - a
        if a + b >= 2 and form == canonical_form(koelman_quad(a, b)):
            return {"a": a, "b": b}
    return None
