"""Integer matrices with Smith and Hermite normal forms.

Entries are Python ints, so there is no overflow.  Both normal forms are
deterministic functions of their input.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

__all__ = [
    "IntegerMatrix",
    "smith_normal_form",
    "hermite_normal_form",
    "saturate_columns",
    "integer_solve_mod",
]


@dataclass(frozen=True)
class IntegerMatrix:
    nrows: int
    ncols: int
    rows: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if len(self.rows) != self.nrows or any(len(r) != self.ncols for r in self.rows):
            raise ValueError("matrix dimensions inconsistent with entries")

    @classmethod
    def from_rows(cls, rows: Iterable[Sequence[int]], ncols: int | None = None) -> "IntegerMatrix":
        rows = tuple(tuple(int(x) for x in r) for r in rows)
        if ncols is None:
            ncols = len(rows[0]) if rows else 0
        return cls(len(rows), ncols, rows)

    @classmethod
    def from_columns(cls, cols: Iterable[Sequence[int]], nrows: int) -> "IntegerMatrix":
        cols = [tuple(c) for c in cols]
        return cls(nrows, len(cols), tuple(tuple(c[i] for c in cols) for i in range(nrows)))

    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> "IntegerMatrix":
        return cls(nrows, ncols, tuple((0,) * ncols for _ in range(nrows)))

    @classmethod
    def identity(cls, n: int) -> "IntegerMatrix":
        return cls(n, n, tuple(tuple(int(i == j) for j in range(n)) for i in range(n)))

    @classmethod
    def diagonal(cls, entries: Sequence[int], nrows: int | None = None, ncols: int | None = None):
        nrows = len(entries) if nrows is None else nrows
        ncols = len(entries) if ncols is None else ncols
        rows = [[0] * ncols for _ in range(nrows)]
        for i, d in enumerate(entries):
            rows[i][i] = d
        return cls.from_rows(rows, ncols)

    @property
    def shape(self) -> tuple[int, int]:
        return self.nrows, self.ncols

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def tolist(self) -> list[list[int]]:
        return [list(r) for r in self.rows]

    def column(self, j: int) -> tuple[int, ...]:
        return tuple(r[j] for r in self.rows)

    def columns(self) -> list[tuple[int, ...]]:
        return [self.column(j) for j in range(self.ncols)]

    @property
    def T(self) -> "IntegerMatrix":
        return IntegerMatrix(self.ncols, self.nrows, tuple(zip(*self.rows)) if self.nrows else
                             tuple(() for _ in range(self.ncols)))

    def __matmul__(self, other: "IntegerMatrix") -> "IntegerMatrix":
        if self.ncols != other.nrows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        cols = other.columns()
        rows = tuple(tuple(sum(a * b for a, b in zip(r, c)) for c in cols) for r in self.rows)
        return IntegerMatrix(self.nrows, other.ncols, rows)

    def apply(self, v: Sequence) -> list:
        """Matrix-vector product; works for rational vectors too."""
        return [sum((a * x for a, x in zip(r, v)), 0) for r in self.rows]

    def hstack(self, other: "IntegerMatrix") -> "IntegerMatrix":
        if self.nrows != other.nrows:
            raise ValueError("row count mismatch")
        return IntegerMatrix(self.nrows, self.ncols + other.ncols,
                             tuple(a + b for a, b in zip(self.rows, other.rows)))

    def select_columns(self, idx: Sequence[int]) -> "IntegerMatrix":
        return IntegerMatrix(self.nrows, len(idx), tuple(tuple(r[j] for j in idx) for r in self.rows))

    def __neg__(self):
        return IntegerMatrix(self.nrows, self.ncols, tuple(tuple(-x for x in r) for r in self.rows))

    def is_zero(self) -> bool:
        return not any(any(r) for r in self.rows)

    def det(self) -> int:
        if self.nrows != self.ncols:
            raise ValueError("determinant of non-square matrix")
        n = self.nrows
        a = self.tolist()
        sign, prev = 1, 1
        for k in range(n):
            piv = next((i for i in range(k, n) if a[i][k]), None)
            if piv is None:
                return 0
            if piv != k:
                a[k], a[piv] = a[piv], a[k]
                sign = -sign
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    a[i][j] = (a[k][k] * a[i][j] - a[i][k] * a[k][j]) // prev
                a[i][k] = 0
            prev = a[k][k]
        return sign * (a[n - 1][n - 1] if n else 1)

    def rank(self) -> int:
        _, d, _ = smith_normal_form(self)
        return sum(1 for i in range(min(self.shape)) if d[i, i])


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    return a, x0, y0


def smith_normal_form(a: IntegerMatrix) -> tuple[IntegerMatrix, IntegerMatrix, IntegerMatrix]:
    """Return (U, D, V) with U @ A @ V == D, U and V unimodular.

    D is diagonal with nonnegative entries d_1 | d_2 | ... and the
    nonzero entries first.
    """
    m, n = a.shape
    d = a.tolist()
    u = [[int(i == j) for j in range(m)] for i in range(m)]
    v = [[int(i == j) for j in range(n)] for i in range(n)]

    def swap_rows(i, j):
        d[i], d[j] = d[j], d[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for r in d:
            r[i], r[j] = r[j], r[i]
        for r in v:
            r[i], r[j] = r[j], r[i]

    def row_combine(i, j, p, q, r, s):
        # rows (i, j) <- (p*row_i + q*row_j, r*row_i + s*row_j)
        for mat in (d, u):
            ri, rj = mat[i], mat[j]
            mat[i] = [p * x + q * y for x, y in zip(ri, rj)]
            mat[j] = [r * x + s * y for x, y in zip(ri, rj)]

    def col_combine(i, j, p, q, r, s):
        for mat in (d, v):
            for row in mat:
                x, y = row[i], row[j]
                row[i] = p * x + q * y
                row[j] = r * x + s * y

    t = 0
    while t < min(m, n):
        # pivot: smallest nonzero absolute value in the remaining block
        best = None
        for i in range(t, m):
            for j in range(t, n):
                x = d[i][j]
                if x and (best is None or abs(x) < best[0]):
                    best = (abs(x), i, j)
        if best is None:
            break
        _, pi, pj = best
        swap_rows(t, pi)
        swap_cols(t, pj)
        while True:
            done = True
            for i in range(t + 1, m):
                if d[i][t] and d[i][t] % d[t][t] == 0:
                    row_combine(t, i, 1, 0, -(d[i][t] // d[t][t]), 1)
                elif d[i][t]:
                    g, x, y = _xgcd(d[t][t], d[i][t])
                    p, q = d[t][t] // g, d[i][t] // g
                    row_combine(t, i, x, y, -q, p)
                    done = False
            for j in range(t + 1, n):
                if d[t][j] and d[t][j] % d[t][t] == 0:
                    col_combine(t, j, 1, 0, -(d[t][j] // d[t][t]), 1)
                elif d[t][j]:
                    g, x, y = _xgcd(d[t][t], d[t][j])
                    p, q = d[t][t] // g, d[t][j] // g
                    col_combine(t, j, x, y, -q, p)
                    done = False
            if done:
                # enforce divisibility of the rest of the block
                bad = None
                for i in range(t + 1, m):
                    for j in range(t + 1, n):
                        if d[i][j] % d[t][t]:
                            bad = i
                            break
                    if bad is not None:
                        break
                if bad is None:
                    break
                row_combine(t, bad, 1, 1, 0, 1)
        if d[t][t] < 0:
            d[t] = [-x for x in d[t]]
            u[t] = [-x for x in u[t]]
        t += 1
    return (IntegerMatrix.from_rows(u, m), IntegerMatrix.from_rows(d, n),
            IntegerMatrix.from_rows(v, n))


def hermite_normal_form(a: IntegerMatrix) -> IntegerMatrix:
    """Column-style Hermite normal form H = A @ W with W unimodular.

    H is lower echelon: pivot rows increase with the column index, pivots
    are positive, entries left of a pivot lie in [0, pivot), and zero
    columns come last.  Matrices with the same column lattice give the
    same H.
    """
    m, n = a.shape
    h = [list(r) for r in a.rows]

    def col(j):
        return [h[i][j] for i in range(m)]

    def set_col(j, c):
        for i in range(m):
            h[i][j] = c[i]

    k = 0
    for i in range(m):
        if k >= n:
            break
        # combine columns k..n-1 so that only column k is nonzero in row i
        for j in range(k + 1, n):
            if h[i][j]:
                g, x, y = _xgcd(h[i][k], h[i][j])
                p, q = h[i][k] // g, h[i][j] // g
                ck, cj = col(k), col(j)
                set_col(k, [x * s + y * t for s, t in zip(ck, cj)])
                set_col(j, [-q * s + p * t for s, t in zip(ck, cj)])
        if h[i][k] == 0:
            continue
        if h[i][k] < 0:
            set_col(k, [-s for s in col(k)])
        piv = h[i][k]
        for j in range(k):
            f = h[i][j] // piv
            if f:
                cj, ck = col(j), col(k)
                set_col(j, [s - f * t for s, t in zip(cj, ck)])
        k += 1
    return IntegerMatrix.from_rows(h, n)


def saturate_columns(e: IntegerMatrix) -> IntegerMatrix:
    """Basis (in Hermite form) of (column span of E over Q) intersected with Z^n."""
    u, d, _ = smith_normal_form(e)
    r = sum(1 for i in range(min(d.shape)) if d[i, i])
    uinv = _unimodular_inverse(u)
    basis = uinv.select_columns(list(range(r)))
    return hermite_normal_form(basis)


def _unimodular_inverse(u: IntegerMatrix) -> IntegerMatrix:
    n = u.nrows
    a = [[Fraction(x) for x in r] + [Fraction(int(i == j)) for j in range(n)]
         for i, r in enumerate(u.rows)]
    for c in range(n):
        p = next(i for i in range(c, n) if a[i][c])
        a[c], a[p] = a[p], a[c]
        pv = a[c][c]
        a[c] = [x / pv for x in a[c]]
        for i in range(n):
            if i != c and a[i][c]:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[c])]
    out = [[int(x) for x in r[n:]] for r in a]
    return IntegerMatrix.from_rows(out, n)


def unimodular_inverse(u: IntegerMatrix) -> IntegerMatrix:
    return _unimodular_inverse(u)


def integer_solve_mod(a: IntegerMatrix, b: Sequence[Fraction]):
    """Describe {x in Q^k : A x == b (mod Z^n)} via the Smith form of A.

    Returns ``None`` if there is no solution, otherwise (V, D, c, r) where
    the solutions are x = V w with w_i = (z_i - c_i)/d_i (z_i in Z) for
    i < r and w_i arbitrary for i >= r; c = U b.
    """
    u, d, v = smith_normal_form(a)
    c = u.apply([Fraction(x) for x in b])
    r = sum(1 for i in range(min(d.shape)) if d[i, i])
    for i in range(r, a.nrows):
        if c[i].denominator != 1:
            return None
    return v, d, c, r
