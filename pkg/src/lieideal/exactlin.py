"""Exact rational linear algebra.

Everything is done over ``fractions.Fraction``. Matrices are small and dense at
the interface, but elimination runs on sparse dict rows because the matrices
coming out of cochain complexes are mostly zeros.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

Rational = Fraction
ZERO = Fraction(0)
ONE = Fraction(1)


def q(x) -> Fraction:
    """Coerce int / str ("p/q") / Fraction to Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("bool is not a rational")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    raise TypeError(f"cannot read {x!r} as a rational")


def fmt(x: Fraction) -> str:
    x = q(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


@dataclass(frozen=True)
class Matrix:
    rows: int
    cols: int
    entries: tuple  # row-major, length rows*cols

    def __post_init__(self):
        if len(self.entries) != self.rows * self.cols:
            raise ValueError("entries length must be rows*cols")

    @staticmethod
    def from_rows(rows: Sequence[Sequence], cols: int | None = None) -> "Matrix":
        rows = [list(r) for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        for r in rows:
            if len(r) != cols:
                raise ValueError("ragged rows")
        return Matrix(len(rows), cols, tuple(q(x) for r in rows for x in r))

    @staticmethod
    def from_cols(cols: Sequence[Sequence], rows: int | None = None) -> "Matrix":
        cols = [list(c) for c in cols]
        if rows is None:
            rows = len(cols[0]) if cols else 0
        return Matrix.from_rows([[c[i] for c in cols] for i in range(rows)], len(cols))

    @staticmethod
    def zeros(rows: int, cols: int) -> "Matrix":
        return Matrix(rows, cols, (ZERO,) * (rows * cols))

    @staticmethod
    def identity(n: int) -> "Matrix":
        return Matrix(n, n, tuple(ONE if i == j else ZERO for i in range(n) for j in range(n)))

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> list:
        return list(self.entries[i * self.cols:(i + 1) * self.cols])

    def col(self, j: int) -> list:
        return [self.entries[i * self.cols + j] for i in range(self.rows)]

    def to_rows(self) -> list:
        return [self.row(i) for i in range(self.rows)]

    def to_cols(self) -> list:
        return [self.col(j) for j in range(self.cols)]

    @property
    def T(self) -> "Matrix":
        return Matrix.from_rows(self.to_cols(), self.rows) if self.cols else Matrix.zeros(0, self.rows)

    def apply(self, v: Sequence) -> list:
        if len(v) != self.cols:
            raise ValueError("dimension mismatch")
        out = []
        c = self.cols
        for i in range(self.rows):
            s = ZERO
            base = i * c
            for j, vj in enumerate(v):
                if vj:
                    a = self.entries[base + j]
                    if a:
                        s += a * vj
            out.append(s)
        return out

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.cols != other.rows:
            raise ValueError("dimension mismatch")
        ocols = other.to_cols()
        cols = [self.apply(c) for c in ocols]
        return Matrix.from_cols(cols, self.rows) if cols else Matrix.zeros(self.rows, 0)

    def __add__(self, other: "Matrix") -> "Matrix":
        return Matrix(self.rows, self.cols, tuple(a + b for a, b in zip(self.entries, other.entries)))

    def __sub__(self, other: "Matrix") -> "Matrix":
        return Matrix(self.rows, self.cols, tuple(a - b for a, b in zip(self.entries, other.entries)))

    def scale(self, s) -> "Matrix":
        s = q(s)
        return Matrix(self.rows, self.cols, tuple(s * a for a in self.entries))

    def is_zero(self) -> bool:
        return not any(self.entries)

    def hstack(self, other: "Matrix") -> "Matrix":
        if self.rows != other.rows:
            raise ValueError("row mismatch")
        return Matrix.from_cols(self.to_cols() + other.to_cols(), self.rows)


# -- sparse elimination core ------------------------------------------------

def _sparse_rows(m: Matrix) -> list:
    out = []
    c = m.cols
    for i in range(m.rows):
        base = i * c
        out.append({j: m.entries[base + j] for j in range(c) if m.entries[base + j]})
    return out


def _rref_sparse(rows: list, ncols: int, keep_rest: bool = False):
    """In-place style rref on dict rows, pivoting only in columns < ncols.
    Returns (rows, pivots); with keep_rest the non-pivot rows follow the pivot rows."""
    rows = [dict(r) for r in rows if r]
    pivots = []
    prow = 0
    # column-wise search keeps the pivot list increasing
    for col in range(ncols):
        sel = None
        for i in range(prow, len(rows)):
            if col in rows[i]:
                sel = i
                break
        if sel is None:
            continue
        rows[prow], rows[sel] = rows[sel], rows[prow]
        pr = rows[prow]
        inv = ONE / pr[col]
        if inv != ONE:
            for k in pr:
                pr[k] *= inv
        for i in range(len(rows)):
            if i != prow and col in rows[i]:
                r = rows[i]
                f = r[col]
                for k, v in pr.items():
                    nv = r.get(k, ZERO) - f * v
                    if nv:
                        r[k] = nv
                    else:
                        r.pop(k, None)
        pivots.append(col)
        prow += 1
        if prow == len(rows):
            break
    return (rows if keep_rest else rows[:prow]), pivots


def rank_of_vectors(vectors: Iterable, dim: int) -> int:
    rows = [{j: x for j, x in enumerate(v) if x} for v in vectors]
    return len(_rref_sparse(rows, dim)[1])


def rref(m: Matrix):
    rows, piv = _rref_sparse(_sparse_rows(m), m.cols)
    dense = [[r.get(j, ZERO) for j in range(m.cols)] for r in rows]
    dense += [[ZERO] * m.cols for _ in range(m.rows - len(rows))]
    return Matrix.from_rows(dense, m.cols) if m.rows else Matrix.zeros(0, m.cols), piv


def rank(m: Matrix) -> int:
    return len(_rref_sparse(_sparse_rows(m), m.cols)[1])


@dataclass(frozen=True)
class Subspace:
    ambient_dim: int
    basis: Matrix  # ambient_dim x k, independent columns

    def __post_init__(self):
        if self.basis.rows != self.ambient_dim:
            raise ValueError("basis rows must equal ambient_dim")

    @property
    def dim(self) -> int:
        return self.basis.cols

    def vectors(self) -> list:
        return self.basis.to_cols()

    @staticmethod
    def span(ambient_dim: int, vectors: Sequence[Sequence]) -> "Subspace":
        """Span of arbitrary vectors; keeps the first independent ones."""
        vecs = [[q(x) for x in v] for v in vectors]
        if not vecs:
            return Subspace.zero(ambient_dim)
        return image_basis(Matrix.from_cols(vecs, ambient_dim))

    @staticmethod
    def zero(n: int) -> "Subspace":
        return Subspace(n, Matrix.zeros(n, 0))

    @staticmethod
    def full(n: int) -> "Subspace":
        return Subspace(n, Matrix.identity(n))

    @staticmethod
    def coordinate(n: int, idx: Sequence[int]) -> "Subspace":
        return Subspace(n, Matrix.from_cols([[ONE if i == j else ZERO for i in range(n)] for j in idx], n))

    def coords(self, v: Sequence):
        """Coordinates of v in this basis, or None if v is not in the subspace."""
        return solve(self.basis, v)

    def contains_vector(self, v: Sequence) -> bool:
        return self.coords(v) is not None

    def equals(self, other: "Subspace") -> bool:
        return subspace_ops(self, other)[2] and subspace_ops(other, self)[2]


def kernel_basis(m: Matrix) -> Subspace:
    rows, piv = _rref_sparse(_sparse_rows(m), m.cols)
    pset = set(piv)
    free = [j for j in range(m.cols) if j not in pset]
    vecs = []
    for f in free:
        v = [ZERO] * m.cols
        v[f] = ONE
        for r, p in zip(rows, piv):
            a = r.get(f)
            if a:
                v[p] = -a
        vecs.append(v)
    if not vecs:
        return Subspace.zero(m.cols)
    return Subspace(m.cols, Matrix.from_cols(vecs, m.cols))


def image_basis(m: Matrix) -> Subspace:
    """Column space, spanned by the pivot columns of m itself."""
    _, piv = _rref_sparse(_sparse_rows(m), m.cols)
    if not piv:
        return Subspace.zero(m.rows)
    return Subspace(m.rows, Matrix.from_cols([m.col(j) for j in piv], m.rows))


def solve(m: Matrix, b: Sequence):
    """One solution of m x = b (free variables zero), or None."""
    if len(b) != m.rows:
        raise ValueError("length(b) must equal rows(m)")
    rows = _sparse_rows(m)
    for r, bi in zip(rows, b):
        bi = q(bi)
        if bi:
            r[m.cols] = bi
    red, piv = _rref_sparse(rows, m.cols + 1)
    if piv and piv[-1] == m.cols:
        return None
    x = [ZERO] * m.cols
    for r, p in zip(red, piv):
        x[p] = r.get(m.cols, ZERO)
    return x


class LeftInverse:
    """Fast coordinates for a fixed full-column-rank matrix.

    Picks independent rows R of S once and inverts S[R]; then
    coords(v) = inv @ v[R]. Membership is checked on request.
    """

    def __init__(self, S: Matrix):
        self.S = S
        _, rows_idx = _rref_sparse(_sparse_rows(S.T), S.rows) if S.cols else ([], [])
        if len(rows_idx) != S.cols:
            raise ValueError("matrix does not have full column rank")
        self.R = rows_idx
        sub = Matrix.from_rows([S.row(i) for i in rows_idx], S.cols) if S.cols else Matrix.zeros(0, 0)
        self.inv = inverse(sub) if S.cols else sub

    def coords(self, v: Sequence, check: bool = False):
        x = self.inv.apply([v[i] for i in self.R]) if self.S.cols else []
        if check:
            if list(self.S.apply(x)) != [q(a) for a in v]:
                return None
        return x


def solve_many(T: Matrix, ys: Sequence[Sequence]):
    """Solve T x = y for each y at once (T of full column rank).

    Returns a list of solutions, with None for each y outside the column span.
    """
    t = T.cols
    rows = _sparse_rows(T)
    for j, y in enumerate(ys):
        for i, yi in enumerate(y):
            if yi:
                rows[i][t + j] = q(yi)
    # pivot on T's columns only, so one inconsistent y cannot mask another
    red, piv = _rref_sparse(rows, t, keep_rest=True)
    if len(piv) != t:
        raise ValueError("matrix does not have full column rank")
    bad = {k - t for r in red[t:] for k in r}
    out = []
    for j in range(len(ys)):
        if j in bad:
            out.append(None)
            continue
        out.append([red[r].get(t + j, ZERO) for r in range(t)])
    return out


def inverse(m: Matrix) -> Matrix:
    if m.rows != m.cols:
        raise ValueError("square matrix required")
    n = m.rows
    rows = _sparse_rows(m)
    for i, r in enumerate(rows):
        r[n + i] = ONE
    red, piv = _rref_sparse(rows, 2 * n)
    if len(piv) < n or piv[:n] != list(range(n)):
        raise ZeroDivisionError("singular matrix")
    return Matrix.from_rows([[r.get(n + j, ZERO) for j in range(n)] for r in red[:n]], n)


def complement(s: Subspace) -> Subspace:
    """Pivot completion: add e_j for every coordinate j that is not a pivot of s."""
    n = s.ambient_dim
    if s.dim == 0:
        return Subspace.full(n)
    _, piv = _rref_sparse(_sparse_rows(s.basis.T), n)
    free = [j for j in range(n) if j not in set(piv)]
    return Subspace.coordinate(n, free)


def orth_complement(s: Subspace) -> Subspace:
    if s.dim == 0:
        return Subspace.full(s.ambient_dim)
    return kernel_basis(s.basis.T)


def subspace_ops(a: Subspace, b: Subspace):
    """(a + b, a ∩ b, b ⊆ a)."""
    if a.ambient_dim != b.ambient_dim:
        raise ValueError("ambient dimensions differ")
    n = a.ambient_dim
    allv = a.vectors() + b.vectors()
    total = Subspace.span(n, allv) if allv else Subspace.zero(n)
    # intersection from the kernel of [A | -B]
    if a.dim == 0 or b.dim == 0:
        inter = Subspace.zero(n)
    else:
        M = a.basis.hstack(b.basis.scale(-1))
        K = kernel_basis(M)
        vecs = [a.basis.apply(k[:a.dim]) for k in K.vectors()]
        inter = Subspace.span(n, vecs) if vecs else Subspace.zero(n)
    contains = total.dim == a.dim
    return total, inter, contains


def direct_sum_check(a: Subspace, b: Subspace) -> bool:
    total, inter, _ = subspace_ops(a, b)
    return total.dim == a.ambient_dim and inter.dim == 0
