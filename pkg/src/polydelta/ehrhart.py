"""Ehrhart counting: L(k) = #(kP ∩ M), the h*-vector, normalized volume,
degree, empty depth and reciprocity checks."""

from __future__ import annotations

from dataclasses import dataclass
from math import comb

from .geometry import LatticePolytope, edge_determinant
from .report import CheckReport, InternalInconsistency


@dataclass(frozen=True)
class HStarVector:
    n: int
    coeffs: tuple[int, ...]

    def __post_init__(self):
        if len(self.coeffs) != self.n + 1:
            raise ValueError(f"h* of a {self.n}-polytope has {self.n + 1} coefficients")
        if self.coeffs[0] != 1 or any(c < 0 for c in self.coeffs):
            raise InternalInconsistency(f"invalid h*-vector {self.coeffs}")

    def __getitem__(self, i: int) -> int:
        return self.coeffs[i]

    @property
    def degree(self) -> int:
        return max(i for i, c in enumerate(self.coeffs) if c)

    @property
    def volume(self) -> int:
        return sum(self.coeffs)

    @property
    def empty_depth(self) -> int:
        return self.n - self.degree

    def ehrhart(self, k: int) -> int:
        """L(k) predicted by the series numerator."""
        n = self.n
        return sum(h * comb(k - i + n, n) for i, h in enumerate(self.coeffs) if k - i >= 0)

    def ehrhart_interior(self, k: int) -> int:
        """#int(kP)∩M from the reversed numerator ``h*_n t + ... + h*_0 t^{n+1}``."""
        n = self.n
        return sum(h * comb(k + i - 1, n) for i, h in enumerate(self.coeffs) if k + i - 1 >= n)


@dataclass(frozen=True)
class EhrhartProfile:
    counts: tuple[int, ...]
    interior_counts: tuple[int, ...]


def ehrhart_counts(p: LatticePolytope, kmax: int) -> list[int]:
    return [p.count_points(k) for k in range(kmax + 1)]


def interior_counts(p: LatticePolytope, kmax: int) -> list[int]:
    return [p.count_points(k, interior=True) for k in range(1, kmax + 1)]


def profile(p: LatticePolytope, kmax: int) -> EhrhartProfile:
    return EhrhartProfile(tuple(ehrhart_counts(p, kmax)), tuple(interior_counts(p, kmax)))


def h_star(p: LatticePolytope) -> HStarVector:
    """``h*_i = sum_j (-1)^j C(n+1, j) L(i-j)`` from the counts L(0..n)."""
    n = p.dim
    cached = p.__dict__.get("_h_star")
    if cached is not None:
        return cached
    L = ehrhart_counts(p, n)
    coeffs = tuple(
        sum((-1) ** j * comb(n + 1, j) * L[i - j] for j in range(i + 1)) for i in range(n + 1)
    )
    h = HStarVector(n, coeffs)
    p.__dict__["_h_star"] = h
    return h


def normalized_volume(p: LatticePolytope) -> int:
    """v(P) = n! vol(P) as the sum of h*, cross-checked against the n-th
    finite difference of L(1..n+1) (which uses the out-of-sample count
    L(n+1)) and, for simplices, the edge determinant."""
    n = p.dim
    v = h_star(p).volume
    L = ehrhart_counts(p, n + 1)
    diff = sum((-1) ** (n - j) * comb(n, j) * L[1 + j] for j in range(n + 1))
    if diff != v:
        raise InternalInconsistency(f"volume paths disagree: sum h* = {v}, finite difference = {diff}")
    if p.is_simplex and edge_determinant(p) != v:
        raise InternalInconsistency(f"volume {v} != simplex determinant {edge_determinant(p)}")
    if v < 1:
        raise InternalInconsistency(f"non-positive volume {v}")
    return v


def degree(p: LatticePolytope) -> int:
    return h_star(p).degree


def empty_depth(p: LatticePolytope) -> int:
    """Largest k >= 1 with no interior lattice point in kP (0 if P has one).

    Computed by scanning dilates directly, then checked against
    ``deg P = n - e(P)``.
    """
    n = p.dim
    e = 0
    for k in range(1, n + 2):
        if p.count_points(k, interior=True):
            break
        e = k
    else:
        raise InternalInconsistency(f"int({n + 1}P) has no lattice point")
    if e != n - degree(p):
        raise InternalInconsistency(f"empty depth {e} but degree {degree(p)} in dimension {n}")
    return e


def reciprocity_check(p: LatticePolytope, kmax: int | None = None) -> CheckReport:
    """Compare the interior series predicted from h* with counted L°(k)."""
    n = p.dim
    kmax = 2 * n + 2 if kmax is None else kmax
    if kmax < n + 1:
        raise ValueError("kmax must be >= n + 1")
    h = h_star(p)
    for k in range(1, kmax + 1):
        got = p.count_points(k, interior=True)
        want = h.ehrhart_interior(k)
        if got != want:
            return CheckReport("reciprocity", False, got, want, detail={"k": k})
    top = p.count_points(1, interior=True) == h[n]
    two = p.count_points(2, interior=True) == h[n - 1] + (n + 1) * h[n]
    return CheckReport(
        "reciprocity",
        top and two,
        detail={"kmax": kmax, "h_n_is_interior_count": top, "int_2P_identity": two},
    )


def extrapolation_check(p: LatticePolytope) -> CheckReport:
    """L(k) predicted from h* (fit on k <= n) against counts for n < k <= 2n."""
    n = p.dim
    h = h_star(p)
    for k in range(n + 1, 2 * n + 1):
        got = p.count_points(k)
        if got != h.ehrhart(k):
            return CheckReport("extrapolation", False, got, h.ehrhart(k), detail={"k": k})
    return CheckReport("extrapolation", True, detail={"kmax": 2 * n})
