"""Lattice polytopes: vertex/facet representations, dilates, lattice points,
Minkowski sums of point sets and unimodular canonical forms."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from math import gcd
from typing import Iterable, Sequence

from .lattice import (
    ColumnReducer,
    Matrix,
    determinant,
    identity,
    integer_normal,
    primitive,
    rank,
    smith_normal_form,
    vecmat,
)

Point = tuple[int, ...]
PointSet = tuple[Point, ...]


class NotFullDimensional(ValueError):
    def __init__(self, dim: int, ambient_dim: int):
        super().__init__(f"points span an affine space of dimension {dim} < {ambient_dim}")
        self.dim = dim
        self.ambient_dim = ambient_dim


class DegenerateInput(ValueError):
    pass


class UnsupportedClass(ValueError):
    pass


@dataclass(frozen=True)
class Facet:
    normal: Point
    offset: int

    def value(self, x: Sequence[int]) -> int:
        return sum(a * b for a, b in zip(self.normal, x))


@dataclass(frozen=True)
class HalfspaceRep:
    """``P = {x : normal . x <= offset for every facet}``, normals primitive."""

    facets: tuple[Facet, ...]

    def __len__(self) -> int:
        return len(self.facets)

    def __iter__(self):
        return iter(self.facets)

    def contains(self, x: Sequence[int], k: int = 1, strict: bool = False) -> bool:
        if strict:
            return all(f.value(x) < k * f.offset for f in self.facets)
        return all(f.value(x) <= k * f.offset for f in self.facets)


def _dot(a: Sequence[int], b: Sequence[int]) -> int:
    return sum(x * y for x, y in zip(a, b))


def _sub(a: Sequence[int], b: Sequence[int]) -> Point:
    return tuple(x - y for x, y in zip(a, b))


def affine_dimension(points: Sequence[Sequence[int]]) -> int:
    p0 = points[0]
    return rank([_sub(p, p0) for p in points[1:]])


def _hull_facets(points: Sequence[Point], n: int) -> list[Facet]:
    """Facets of the hull of a full-dimensional point set in R^n.

    Exhaustive search over n-subsets: the hyperplane through the subset is a
    facet iff every point lies weakly on one side of it.
    """
    if n == 1:
        xs = [p[0] for p in points]
        return [Facet((1,), max(xs)), Facet((-1,), -min(xs))]
    found = {}
    for sub in combinations(points, n):
        p0 = sub[0]
        normal = integer_normal([_sub(q, p0) for q in sub[1:]])
        if not any(normal):
            continue
        normal = primitive(normal)
        off = _dot(normal, p0)
        if found.get(normal) == off or found.get(tuple(-x for x in normal)) == -off:
            continue
        above = below = False
        for p in points:
            v = _dot(normal, p)
            if v > off:
                above = True
            elif v < off:
                below = True
            if above and below:
                break
        else:
            if above:
                normal, off = tuple(-x for x in normal), -off
            if normal not in found:
                found[normal] = off
    return sorted((Facet(a, b) for a, b in found.items()), key=lambda f: (f.normal, f.offset))


def _convex_hull_2d(points: Iterable[Point]) -> list[Point]:
    """Counter-clockwise hull vertices (Andrew's monotone chain), no collinear points."""
    pts = sorted(set(points))
    if len(pts) <= 2:
        return pts

    def cross(o, a, b):
        return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])

    lower: list[Point] = []
    for p in pts:
        while len(lower) >= 2 and cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    upper: list[Point] = []
    for p in reversed(pts):
        while len(upper) >= 2 and cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    return lower[:-1] + upper[:-1]


class LatticePolytope:
    """Full-dimensional lattice polytope given by its irredundant vertex set.

    Use :func:`from_points` to construct one from arbitrary generators.
    Instances are immutable; derived data (facets, scan tables, dilate
    counts) is cached on first use.
    """

    def __init__(self, vertices: Iterable[Sequence[int]], dim: int, *, _facets=None):
        self.vertices: PointSet = tuple(sorted(tuple(int(x) for x in v) for v in vertices))
        self.dim = dim
        if _facets is not None:
            self.__dict__["halfspaces"] = HalfspaceRep(tuple(_facets))
        self._counts: dict[tuple[int, bool], int] = {}

    def __repr__(self) -> str:
        return f"LatticePolytope(dim={self.dim}, vertices={list(self.vertices)})"

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, LatticePolytope)
            and self.dim == other.dim
            and self.vertices == other.vertices
        )

    def __hash__(self) -> int:
        return hash((self.dim, self.vertices))

    def __getstate__(self):
        return {"vertices": self.vertices, "dim": self.dim}

    def __setstate__(self, state):
        self.__init__(state["vertices"], state["dim"])

    @property
    def is_simplex(self) -> bool:
        return len(self.vertices) == self.dim + 1

    @cached_property
    def halfspaces(self) -> HalfspaceRep:
        return HalfspaceRep(tuple(_hull_facets(self.vertices, self.dim)))

    @cached_property
    def cyclic_vertices(self) -> PointSet:
        """Vertices in counter-clockwise boundary order (polygons only)."""
        if self.dim != 2:
            raise UnsupportedClass("boundary walk is defined for polygons only")
        return tuple(_convex_hull_2d(self.vertices))

    def translate(self, t: Sequence[int]) -> "LatticePolytope":
        return LatticePolytope([tuple(a + b for a, b in zip(v, t)) for v in self.vertices], self.dim)

    def transform(self, u: Matrix, t: Sequence[int] | None = None) -> "LatticePolytope":
        """Image under ``x -> x @ u + t`` for a unimodular ``u``."""
        t = t if t is not None else (0,) * self.dim
        verts = [tuple(a + b for a, b in zip(vecmat(v, u), t)) for v in self.vertices]
        return LatticePolytope(verts, self.dim)

    # -- scanning ---------------------------------------------------------

    @cached_property
    def _scan_tables(self):
        """Per-coordinate bound tables for fibre-by-fibre enumeration of kP.

        Coordinates are reordered by increasing extent.  Level ``j`` holds the
        facets of the projection of P onto the first ``j + 1`` coordinates
        that involve coordinate ``j``; a prefix inside the projection of kP
        always has a nonempty real fibre, so the integer range at each level
        is exact and no candidate is wasted except empty integer fibres.
        """
        n = self.dim
        ext = [max(v[i] for v in self.vertices) - min(v[i] for v in self.vertices) for i in range(n)]
        perm = sorted(range(n), key=lambda i: (ext[i], i))
        verts = [tuple(v[i] for i in perm) for v in self.vertices]
        levels = []
        for j in range(n):
            if j == n - 1:
                facets = [Facet(tuple(f.normal[i] for i in perm), f.offset) for f in self.halfspaces]
            else:
                proj = sorted({v[: j + 1] for v in verts})
                facets = _hull_facets(proj, j + 1)
            upper, lower, flat = [], [], []
            for f in facets:
                a = f.normal[j]
                entry = (a, f.normal[:j], f.offset)
                if a > 0:
                    upper.append(entry)
                elif a < 0:
                    lower.append(entry)
                else:
                    flat.append((f.normal[:j], f.offset))
            levels.append((upper, lower, flat))
        return perm, levels

    def _scan(self, k: int, interior: bool, collect: list | None) -> int:
        perm, levels = self._scan_tables
        n = self.dim
        prefix = [0] * n
        total = 0
        last = n - 1

        def rec(j):
            nonlocal total
            upper, lower, flat = levels[j]
            hi = lo = None
            strict = interior and j == last
            for a, c, b in upper:
                val = k * b - sum(x * y for x, y in zip(c, prefix))
                h = -((-val) // a) - 1 if strict else val // a
                if hi is None or h < hi:
                    hi = h
            for a, c, b in lower:
                val = k * b - sum(x * y for x, y in zip(c, prefix))
                lw = (-val) // (-a) + 1 if strict else -(val // (-a))
                if lo is None or lw > lo:
                    lo = lw
            if lo > hi:
                return
            if strict:
                for c, b in flat:
                    if sum(x * y for x, y in zip(c, prefix)) >= k * b:
                        return
            if j == last:
                if collect is None:
                    total += hi - lo + 1
                else:
                    for x in range(lo, hi + 1):
                        prefix[j] = x
                        collect.append(tuple(prefix))
                    total += hi - lo + 1
                return
            for x in range(lo, hi + 1):
                prefix[j] = x
                rec(j + 1)

        rec(0)
        if collect is not None:
            inv = [0] * n
            for pos, i in enumerate(perm):
                inv[i] = pos
            collect[:] = [tuple(p[inv[i]] for i in range(n)) for p in collect]
        return total

    def count_points(self, k: int = 1, interior: bool = False) -> int:
        """``#(kP ∩ M)`` or ``#(int(kP) ∩ M)``."""
        if k < 0:
            raise ValueError("dilation factor must be >= 0")
        if k == 0:
            return 0 if interior else 1
        key = (k, interior)
        if key not in self._counts:
            self._counts[key] = self._scan(k, interior, None)
        return self._counts[key]

    def points(self, k: int = 1, interior: bool = False) -> PointSet:
        if k == 0:
            return () if interior else ((0,) * self.dim,)
        out: list = []
        self._scan(k, interior, out)
        return tuple(sorted(out))


# -- construction ------------------------------------------------------------


def from_points(points: Iterable[Sequence[int]], ambient_dim: int | None = None) -> LatticePolytope:
    """Polytope spanned by ``points``; redundant points are dropped.

    Raises :class:`NotFullDimensional` when the points do not span
    ``ambient_dim`` affinely.
    """
    pts = sorted({tuple(int(x) for x in p) for p in points})
    if not pts:
        raise DegenerateInput("empty point set")
    n = len(pts[0]) if ambient_dim is None else ambient_dim
    if any(len(p) != n for p in pts):
        raise ValueError(f"all points must have {n} coordinates")
    d = affine_dimension(pts)
    if d < n:
        raise NotFullDimensional(d, n)
    if n == 2:
        return LatticePolytope(_convex_hull_2d(pts), 2)
    facets = _hull_facets(pts, n)
    verts = []
    for p in pts:
        tight = [f.normal for f in facets if f.value(p) == f.offset]
        if len(tight) >= n and rank(tight) == n:
            verts.append(p)
    return LatticePolytope(verts, n, _facets=facets)


@dataclass(frozen=True)
class AffineTransform:
    """``x -> ((x - origin) @ matrix)[:dim]``; ``matrix`` is unimodular."""

    origin: Point
    matrix: Matrix
    dim: int

    def apply(self, x: Sequence[int]) -> Point:
        return vecmat(_sub(x, self.origin), self.matrix)[: self.dim]

    @property
    def is_identity(self) -> bool:
        return not any(self.origin) and self.matrix == identity(len(self.origin))

    def to_dict(self) -> dict:
        return {"origin": list(self.origin), "matrix": [list(r) for r in self.matrix], "dim": self.dim}


def normalize_full_dimensional(points: Iterable[Sequence[int]]) -> tuple[LatticePolytope, AffineTransform]:
    """Re-coordinatize points onto the lattice of their affine hull.

    The saturated lattice ``M ∩ aff(P)`` is mapped onto ``Z^d`` by a
    unimodular change of basis taken from a Smith normal form of the
    difference matrix, so lattice point counts are preserved.
    """
    pts = sorted({tuple(int(x) for x in p) for p in points})
    if len(pts) < 2:
        raise DegenerateInput("need at least two distinct points")
    n = len(pts[0])
    d = affine_dimension(pts)
    if d == n:
        return from_points(pts, n), AffineTransform((0,) * n, identity(n), n)
    origin = pts[0]
    diffs = [_sub(p, origin) for p in pts[1:]]
    s, _, v = smith_normal_form(diffs)
    t = AffineTransform(origin, v, d)
    return from_points([t.apply(p) for p in pts], d), t


def facets(p: LatticePolytope) -> HalfspaceRep:
    return p.halfspaces


def lattice_points(p: LatticePolytope, k: int = 1) -> PointSet:
    """``(kP) ∩ M`` in sorted order."""
    if k < 0:
        raise ValueError("k must be >= 0")
    return p.points(k)


def interior_lattice_points(p: LatticePolytope, k: int = 1) -> PointSet:
    """``int(kP) ∩ M`` in sorted order."""
    if k < 1:
        raise ValueError("k must be >= 1")
    return p.points(k, interior=True)


def minkowski_sum(a: Iterable[Sequence[int]], b: Iterable[Sequence[int]]) -> PointSet:
    a = list(a)
    b = list(b)
    if a and b and len(a[0]) != len(b[0]):
        raise ValueError(f"dimension mismatch: {len(a[0])} vs {len(b[0])}")
    return tuple(sorted({tuple(x + y for x, y in zip(p, q)) for p in a for q in b}))


# -- canonical forms ----------------------------------------------------------


def _walk_form(cyc: Sequence[Point]) -> Matrix:
    m = len(cyc)
    best = None
    for s in range(m):
        for step in (1, -1):
            origin = cyc[s]
            red = ColumnReducer(2)
            rows = tuple(red.push(_sub(cyc[(s + step * i) % m], origin)) for i in range(1, m))
            if best is None or rows < best:
                best = rows
    return best


def _simplex_form(verts: Sequence[Point], n: int) -> Matrix:
    """Lexicographically least column-HNF over all vertex orderings.

    Rows of the HNF depend only on the rows before them, so the search keeps,
    at every depth, only the vertices producing the least next row.
    """
    best: list | None = None

    def dfs(red: ColumnReducer, remaining: list[Point], prefix: list, tied: bool):
        nonlocal best
        if not remaining:
            if best is None or prefix < best:
                best = list(prefix)
            return
        d = len(prefix)
        cands = []
        for i, r in enumerate(remaining):
            rr = red.copy()
            cands.append((rr.push(r), i, rr))
        low = min(c[0] for c in cands)
        if best is not None and tied:
            if low > best[d]:
                return
            tied = low == best[d]
        for row, i, rr in cands:
            if row == low:
                prefix.append(row)
                dfs(rr, remaining[:i] + remaining[i + 1 :], prefix, tied)
                prefix.pop()

    for i0, origin in enumerate(verts):
        rest = [_sub(v, origin) for j, v in enumerate(verts) if j != i0]
        dfs(ColumnReducer(n), rest, [], best is not None)
    return tuple(best)


def canonical_form(p: LatticePolytope) -> Matrix:
    """A matrix that is equal for two polytopes iff they are affinely
    unimodularly equivalent.

    Supported for polytopes of dimension <= 2 and for simplices.  The form is
    the lexicographic minimum of the column-HNF of the vertex-difference
    matrix over boundary walks (polygons) or all vertex orderings (simplices).
    """
    if p.dim == 2:
        return _walk_form(p.cyclic_vertices)
    if p.is_simplex:
        return _simplex_form(p.vertices, p.dim)
    raise UnsupportedClass(
        f"no canonical form for a non-simplex polytope of dimension {p.dim}"
    )


def is_equivalent(p: LatticePolytope, q: LatticePolytope) -> bool:
    if p.dim != q.dim or len(p.vertices) != len(q.vertices):
        if p.dim == q.dim:
            # still refuse unsupported classes consistently
            canonical_form(p)
            canonical_form(q)
        return False
    return canonical_form(p) == canonical_form(q)


def edge_determinant(p: LatticePolytope) -> int:
    """``|det|`` of the edge matrix of a simplex (its normalized volume)."""
    if not p.is_simplex:
        raise UnsupportedClass("edge determinant needs a simplex")
    v0 = p.vertices[0]
    return abs(determinant([_sub(v, v0) for v in p.vertices[1:]]))


def polygon_area2(vertices: Sequence[Point]) -> int:
    """Twice the area (= normalized volume) of a polygon in boundary order."""
    m = len(vertices)
    return abs(
        sum(
            vertices[i][0] * vertices[(i + 1) % m][1] - vertices[(i + 1) % m][0] * vertices[i][1]
            for i in range(m)
        )
    )


def polygon_boundary_count(vertices: Sequence[Point]) -> int:
    m = len(vertices)
    return sum(
        gcd(vertices[(i + 1) % m][0] - vertices[i][0], vertices[(i + 1) % m][1] - vertices[i][1])
        for i in range(m)
    )
