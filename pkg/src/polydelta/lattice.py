"""Exact integer linear algebra over the lattice Z^n.

Matrices are tuples of row tuples of Python ints.  The single normal-form
convention used throughout the package is the *column-style* Hermite normal
form: ``H = A @ U`` with ``U`` unimodular, obtained by column operations only.
For a matrix whose rows are lattice points, column operations are exactly a
change of lattice basis, so ``H`` is a lattice-invariant of the row set.

Shape of a column-style HNF (``A`` of full column rank, ``m >= n``): ``H`` is
in column echelon form with pivot rows ``r_0 < r_1 < ... < r_{n-1}``; every
pivot is positive, entries right of a pivot are zero, and the entries left of
a pivot (in the pivot row) lie in ``[0, pivot)``.  For square ``A`` this is a
lower-triangular matrix with positive diagonal.
"""

from __future__ import annotations

from typing import Sequence

Matrix = tuple[tuple[int, ...], ...]


class ShapeError(ValueError):
    """Matrix has the wrong shape for the requested operation."""


class RankDeficientError(ValueError):
    """Matrix does not have full column rank."""

    def __init__(self, rank: int, ncols: int):
        super().__init__(f"matrix has rank {rank} < {ncols} columns")
        self.rank = rank
        self.ncols = ncols


def as_matrix(rows: Sequence[Sequence[int]]) -> Matrix:
    m = tuple(tuple(int(x) for x in r) for r in rows)
    if m and len({len(r) for r in m}) != 1:
        raise ShapeError("ragged matrix")
    return m


def identity(n: int) -> Matrix:
    return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))


def transpose(a: Matrix) -> Matrix:
    return tuple(zip(*a)) if a else ()


def matmul(a: Matrix, b: Matrix) -> Matrix:
    if a and b and len(a[0]) != len(b):
        raise ShapeError(f"cannot multiply {len(a)}x{len(a[0])} by {len(b)}x{len(b[0])}")
    bt = transpose(b)
    return tuple(tuple(sum(x * y for x, y in zip(row, col)) for col in bt) for row in a)


def vecmat(v: Sequence[int], a: Matrix) -> tuple[int, ...]:
    """Row vector times matrix."""
    n = len(a[0]) if a else 0
    out = [0] * n
    for x, row in zip(v, a):
        if x:
            for j in range(n):
                out[j] += x * row[j]
    return tuple(out)


def xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Return ``(g, s, t)`` with ``g = gcd(a, b) >= 0`` and ``s*a + t*b = g``.

    When ``a`` divides ``b`` the coefficients are ``(sign(a), 0)``, so that
    elimination against a dividing pivot never moves the pivot.
    """
    if a and b % a == 0:
        return (a, 1, 0) if a > 0 else (-a, -1, 0)
    s0, s1, t0, t1 = 1, 0, 0, 1
    while b:
        q, r = divmod(a, b)
        a, b = b, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if a < 0:
        return -a, -s0, -t0
    return a, s0, t0


def determinant(a: Sequence[Sequence[int]]) -> int:
    """Exact determinant by fraction-free (Bareiss) elimination."""
    n = len(a)
    if any(len(r) != n for r in a):
        raise ShapeError("determinant of a non-square matrix")
    if n == 0:
        return 1
    m = [list(r) for r in a]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k]:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        pivot = m[k][k]
        for i in range(k + 1, n):
            mik = m[i][k]
            row_i, row_k = m[i], m[k]
            for j in range(k + 1, n):
                row_i[j] = (row_i[j] * pivot - mik * row_k[j]) // prev
        prev = pivot
    return sign * m[n - 1][n - 1]


def rank(a: Sequence[Sequence[int]]) -> int:
    """Rank over Q, by fraction-free elimination."""
    m = [list(r) for r in a]
    if not m:
        return 0
    ncols = len(m[0])
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        p = m[r][c]
        for i in range(r + 1, len(m)):
            f = m[i][c]
            if f:
                m[i] = [x * p - f * y for x, y in zip(m[i], m[r])]
        r += 1
        if r == len(m):
            break
    return r


class ColumnReducer:
    """Incremental column-style HNF: feed rows one at a time.

    ``push(row)`` returns the HNF row for ``row`` given all rows pushed so far.
    Rows already emitted are never changed by later pushes, because every
    column operation performed here touches only columns that are zero in the
    earlier rows.  ``U`` (list of columns) accumulates the transform.
    """

    __slots__ = ("n", "cols", "pivots")

    def __init__(self, n: int, cols: list[list[int]] | None = None, pivots: int = 0):
        self.n = n
        self.cols = cols if cols is not None else [[int(i == j) for i in range(n)] for j in range(n)]
        self.pivots = pivots

    def copy(self) -> "ColumnReducer":
        return ColumnReducer(self.n, [c[:] for c in self.cols], self.pivots)

    def image(self, row: Sequence[int]) -> list[int]:
        return [sum(x * y for x, y in zip(row, c)) for c in self.cols]

    def push(self, row: Sequence[int]) -> tuple[int, ...]:
        b = self.image(row)
        r = self.pivots
        cols = self.cols
        if r < self.n and any(b[r:]):
            # fold columns r+1.. into column r with extended gcd
            for j in range(r + 1, self.n):
                if b[j] == 0:
                    continue
                if b[r] == 0:
                    cols[r], cols[j] = cols[j], cols[r]
                    b[r], b[j] = b[j], b[r]
                    continue
                g, s, t = xgcd(b[r], b[j])
                x, y = b[r] // g, b[j] // g
                cr, cj = cols[r], cols[j]
                cols[r] = [s * u + t * v for u, v in zip(cr, cj)]
                cols[j] = [-y * u + x * v for u, v in zip(cr, cj)]
                b[r], b[j] = g, 0
            if b[r] < 0:
                cols[r] = [-u for u in cols[r]]
                b[r] = -b[r]
            p = b[r]
            cr = cols[r]
            for j in range(r):
                q = b[j] // p
                if q:
                    cols[j] = [u - q * v for u, v in zip(cols[j], cr)]
                    b[j] -= q * p
            self.pivots = r + 1
        return tuple(b)

    def transform(self) -> Matrix:
        return transpose(tuple(tuple(c) for c in self.cols))


def hermite_normal_form(a: Sequence[Sequence[int]]) -> tuple[Matrix, Matrix]:
    """Column-style HNF ``(H, U)`` with ``A @ U == H`` and ``|det U| == 1``.

    Raises :class:`RankDeficientError` unless ``A`` has full column rank.
    """
    a = as_matrix(a)
    if not a:
        raise ShapeError("empty matrix")
    n = len(a[0])
    red = ColumnReducer(n)
    rows = tuple(red.push(r) for r in a)
    if red.pivots < n:
        raise RankDeficientError(red.pivots, n)
    return rows, red.transform()


def smith_normal_form(a: Sequence[Sequence[int]]) -> tuple[Matrix, Matrix, Matrix]:
    """Smith normal form ``(S, U, V)`` with ``S == U @ A @ V``.

    ``S`` is diagonal with non-negative entries ``d_1 | d_2 | ...``; ``U`` and
    ``V`` are unimodular.
    """
    a = as_matrix(a)
    m = len(a)
    n = len(a[0]) if m else 0
    s = [list(r) for r in a]
    u = [list(r) for r in identity(m)]
    v = [list(r) for r in identity(n)]

    def row_comb(i, j, p, q, r, t):
        # rows (i, j) <- (p*row_i + q*row_j, r*row_i + t*row_j)
        for mat in (s, u):
            ri, rj = mat[i], mat[j]
            mat[i] = [p * x + q * y for x, y in zip(ri, rj)]
            mat[j] = [r * x + t * y for x, y in zip(ri, rj)]

    def col_comb(i, j, p, q, r, t):
        for mat in (s, v):
            for row in mat:
                x, y = row[i], row[j]
                row[i] = p * x + q * y
                row[j] = r * x + t * y

    for k in range(min(m, n)):
        while True:
            # move the smallest nonzero entry of the trailing block to (k, k)
            best = None
            for i in range(k, m):
                for j in range(k, n):
                    if s[i][j] and (best is None or abs(s[i][j]) < abs(s[best[0]][best[1]])):
                        best = (i, j)
            if best is None:
                break
            i, j = best
            if i != k:
                s[k], s[i] = s[i], s[k]
                u[k], u[i] = u[i], u[k]
            if j != k:
                for mat in (s, v):
                    for row in mat:
                        row[k], row[j] = row[j], row[k]
            done = True
            for i in range(k + 1, m):
                if s[i][k]:
                    g, p, q = xgcd(s[k][k], s[i][k])
                    x, y = s[k][k] // g, s[i][k] // g
                    row_comb(k, i, p, q, -y, x)
                    done = False
            for j in range(k + 1, n):
                if s[k][j]:
                    g, p, q = xgcd(s[k][k], s[k][j])
                    x, y = s[k][k] // g, s[k][j] // g
                    col_comb(k, j, p, q, -y, x)
                    done = False
            if not done:
                continue
            # divisibility: fold any non-divisible trailing entry into row k
            bad = next(
                ((i, j) for i in range(k + 1, m) for j in range(k + 1, n) if s[i][j] % s[k][k]),
                None,
            )
            if bad is None:
                break
            row_comb(k, bad[0], 1, 1, 0, 1)
        if k < m and k < n and s[k][k] < 0:
            s[k] = [-x for x in s[k]]
            u[k] = [-x for x in u[k]]
    return as_matrix(s), as_matrix(u), as_matrix(v)


def primitive(v: Sequence[int]) -> tuple[int, ...]:
    """Divide out the gcd of the entries (zero vector is returned unchanged)."""
    from math import gcd

    g = 0
    for x in v:
        g = gcd(g, x)
    if g <= 1:
        return tuple(v)
    return tuple(x // g for x in v)


def integer_normal(rows: Sequence[Sequence[int]]) -> tuple[int, ...]:
    """A nonzero integer vector orthogonal to ``n - 1`` vectors in Z^n.

    Generalized cross product: signed maximal minors.  Returns the zero vector
    when the rows are linearly dependent.
    """
    n = len(rows) + 1
    out = []
    for j in range(n):
        minor = [[r[c] for c in range(n) if c != j] for r in rows]
        d = determinant(minor) if minor else 1
        out.append(-d if j % 2 else d)
    return tuple(out)


def complete_to_unimodular(u: Sequence[int]) -> Matrix:
    """Unimodular ``W`` with ``u @ W == (0, ..., 0, 1)`` for primitive ``u``.

    Rows of ``W`` are not constrained; only the image of ``u`` matters.
    """
    n = len(u)
    red = ColumnReducer(n)
    b = red.push(u)
    if red.pivots != 1 or b[0] != 1:
        raise ValueError(f"{tuple(u)} is not primitive")
    w = red.transform()
    # pivot sits in column 0; rotate it to the last column
    return tuple(row[1:] + row[:1] for row in w)
