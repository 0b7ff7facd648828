"""Named polytopes and the degree-one classifier.

Vertex lists follow the usual coordinates: ``e_i`` is the i-th unit vector
and the first listed vertex is the origin wherever the construction has one.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .ehrhart import h_star, normalized_volume
from .geometry import (
    LatticePolytope,
    UnsupportedClass,
    _convex_hull_2d,
    canonical_form,
    from_points,
    polygon_area2,
    polygon_boundary_count,
)
from .lattice import complete_to_unimodular, determinant, primitive, vecmat

FAMILIES = (
    "basic",
    "delta2",
    "delta2n",
    "delta25",
    "delta_star",
    "lawrence_prism",
    "exceptional",
    "koelman_quad",
    "fano_pyramid",
)


class BadParams(ValueError):
    def __init__(self, name: str, constraint: str):
        super().__init__(f"{name} requires {constraint}")
        self.name = name
        self.constraint = constraint


@dataclass(frozen=True)
class FamilySpec:
    name: str
    dim: int
    params: tuple[int, ...] = field(default_factory=tuple)


def _e(n: int, i: int, c: int = 1) -> tuple[int, ...]:
    return tuple(c if j == i else 0 for j in range(n))


def _add(*vs):
    return tuple(map(sum, zip(*vs)))


def _require(ok: bool, name: str, constraint: str):
    if not ok:
        raise BadParams(name, constraint)


def basic(n: int) -> LatticePolytope:
    _require(n >= 1, "basic", "n >= 1")
    return from_points([(0,) * n] + [_e(n, i) for i in range(n)])


def delta2(n: int) -> LatticePolytope:
    """conv{0, e1, e2, e1+e2+2e3, e4, ..., en}."""
    _require(n >= 3, "delta2", "n >= 3")
    pts = [(0,) * n, _e(n, 0), _e(n, 1), _add(_e(n, 0), _e(n, 1), _e(n, 2, 2))]
    pts += [_e(n, i) for i in range(3, n)]
    return from_points(pts)


def delta2n(n: int) -> LatticePolytope:
    """conv{0, e1, ..., e_{n-1}, e1+...+e_{n-1}+2en}."""
    _require(n >= 4, "delta2n", "n >= 4")
    pts = [(0,) * n] + [_e(n, i) for i in range(n - 1)]
    pts.append((1,) * (n - 1) + (2,))
    return from_points(pts)


def delta25(n: int) -> LatticePolytope:
    """conv{0, e1, ..., e4, e1+...+e4+2e5, e6, ..., en}."""
    _require(n >= 5, "delta25", "n >= 5")
    pts = [(0,) * n] + [_e(n, i) for i in range(4)]
    pts.append((1, 1, 1, 1, 2) + (0,) * (n - 5))
    pts += [_e(n, i) for i in range(5, n)]
    return from_points(pts)


def delta_star(n: int) -> LatticePolytope:
    """conv{e1, ..., en, -e1-...-en}."""
    _require(n >= 1, "delta_star", "n >= 1")
    return from_points([_e(n, i) for i in range(n)] + [(-1,) * n])


def lawrence_prism(a: Sequence[int]) -> LatticePolytope:
    """conv{0, e1, ..., e_{n-1}, e1+a1 en, ..., e_{n-1}+a_{n-1} en, an en}."""
    a = tuple(a)
    n = len(a)
    name = "lawrence_prism"
    _require(n >= 1, name, "at least one parameter")
    _require(all(x >= 0 for x in a[:-1]), name, "a_i >= 0")
    _require(all(a[i] >= a[i + 1] for i in range(n - 2)), name, "a_1 >= ... >= a_{n-1}")
    _require(a[-1] >= 1, name, "a_n >= 1")
    _require(sum(a) >= 2, name, "a_1 + ... + a_n >= 2")
    pts = [(0,) * n] + [_e(n, i) for i in range(n - 1)]
    pts += [_add(_e(n, i), _e(n, n - 1, a[i])) for i in range(n - 1)]
    pts.append(_e(n, n - 1, a[-1]))
    return from_points(pts)


def exceptional(n: int) -> LatticePolytope:
    """conv{0, 2e1, 2e2, e3, ..., en}; for n = 2 this is conv{0, (2,0), (0,2)}."""
    _require(n >= 2, "exceptional", "n >= 2")
    return from_points([(0,) * n, _e(n, 0, 2), _e(n, 1, 2)] + [_e(n, i) for i in range(2, n)])


def koelman_quad(a: int, b: int) -> LatticePolytope:
    """conv{0, (1,0), (0,a), (1,b)}."""
    _require(a >= 1, "koelman_quad", "a >= 1")
    _require(b >= 0, "koelman_quad", "b >= 0")
    _require(a + b >= 2, "koelman_quad", "a+b >= 2")
    return from_points([(0, 0), (1, 0), (0, a), (1, b)])


def koelman_triangle() -> LatticePolytope:
    return from_points([(0, 0), (0, 2), (2, 0)])


def fano_pyramid(polygon: Sequence[Sequence[int]]) -> LatticePolytope:
    """Height-one pyramid conv({0} ∪ F×{1}) over a polygon F with exactly one
    interior lattice point."""
    pts = [tuple(p) for p in polygon]
    _require(all(len(p) == 2 for p in pts), "fano_pyramid", "planar polygon vertices")
    hull = _convex_hull_2d(pts)
    _require(len(hull) >= 3, "fano_pyramid", "a two-dimensional polygon")
    area2 = polygon_area2(hull)
    interior = (area2 - polygon_boundary_count(hull) + 2) // 2
    _require(interior == 1, "fano_pyramid", "exactly one interior lattice point")
    return from_points([(0, 0, 0)] + [(x, y, 1) for x, y in hull])


def build(spec: FamilySpec) -> LatticePolytope:
    name, n, params = spec.name, spec.dim, tuple(spec.params)
    if name == "basic":
        return basic(n)
    if name == "delta2":
        return delta2(n)
    if name == "delta2n":
        return delta2n(n)
    if name == "delta25":
        return delta25(n)
    if name == "delta_star":
        return delta_star(n)
    if name == "exceptional":
        return exceptional(n)
    if name == "lawrence_prism":
        _require(len(params) == n, name, f"{n} parameters a_1..a_n")
        return lawrence_prism(params)
    if name == "koelman_quad":
        _require(n == 2 and len(params) == 2, name, "dim 2 and parameters (a, b)")
        return koelman_quad(*params)
    if name == "fano_pyramid":
        _require(n == 3 and len(params) >= 6 and len(params) % 2 == 0, name, "dim 3 and polygon coordinates")
        return fano_pyramid([params[i : i + 2] for i in range(0, len(params), 2)])
    raise BadParams(name, f"a family name in {FAMILIES}")


# -- degree one ---------------------------------------------------------------

LAWRENCE = "LawrencePrism"
EXCEPTIONAL = "Exceptional"
NOT_DEGREE_ONE = "NotDegreeOne"


@dataclass(frozen=True)
class DegreeOneClass:
    kind: str
    params: tuple[int, ...] = ()
    method: str = ""

    def to_dict(self) -> dict:
        return {"kind": self.kind, "params": list(self.params), "method": self.method}


def lawrence_layout(lengths: Sequence[int]) -> tuple[int, ...]:
    """Arrange a multiset of fibre lengths to satisfy the constructor's
    constraints: the largest last, the rest in descending order."""
    s = sorted(lengths, reverse=True)
    return tuple(s[1:]) + (s[0],)


def _segment_fibres(p: LatticePolytope) -> tuple[int, ...] | None:
    """Fibre lengths if P projects along some lattice direction onto a unimodular
    (n-1)-simplex with every vertex of P over a vertex of the base."""
    n = p.dim
    verts = p.vertices
    dirs = set()
    for i, u in enumerate(verts):
        for w in verts[i + 1 :]:
            d = primitive(tuple(x - y for x, y in zip(w, u)))
            if d < tuple(-x for x in d):
                d = tuple(-x for x in d)
            dirs.add(d)
    for d in sorted(dirs):
        w = complete_to_unimodular(d)
        images = [vecmat(v, w) for v in verts]
        fibres: dict[tuple, list[int]] = {}
        for x in images:
            fibres.setdefault(x[:-1], []).append(x[-1])
        if len(fibres) != n:
            continue
        base = sorted(fibres)
        if n > 1:
            rows = [tuple(a - b for a, b in zip(q, base[0])) for q in base[1:]]
            if abs(determinant(rows)) != 1:
                continue
        return tuple(sorted((max(t) - min(t) for t in fibres.values()), reverse=True))
    return None


def classify_degree_one(p: LatticePolytope) -> DegreeOneClass:
    n = p.dim
    h = h_star(p)
    if h.degree != 1:
        return DegreeOneClass(NOT_DEGREE_ONE, method="h*")
    lengths = _segment_fibres(p)
    supported = n <= 2 or p.is_simplex
    if supported:
        form = canonical_form(p)
        if n >= 2 and form == canonical_form(exceptional(n)):
            return DegreeOneClass(EXCEPTIONAL, method="canonical_form")
        if lengths is not None and form == canonical_form(lawrence_prism(lawrence_layout(lengths))):
            return DegreeOneClass(LAWRENCE, lengths, method="canonical_form")
        raise UnsupportedClass("degree-one polytope matched neither family")
    if lengths is not None:
        # the projection certifies the prism: shear the lower boundary flat
        if sum(lengths) != normalized_volume(p):
            raise UnsupportedClass("fibre lengths inconsistent with volume")
        return DegreeOneClass(LAWRENCE, lengths, method="projection")
    raise UnsupportedClass("could not certify a degree-one structure")
