"""Dense and sparse exact linear algebra over a cyclotomic field.

Matrices are lists of rows of :class:`Scalar`.  Everything is small, so the
algorithms are plain Gauss-Jordan elimination.
"""
from __future__ import annotations

from typing import Iterable, Optional, Sequence

from .scalars import CyclotomicContext, Scalar

Matrix = list


def zeros(ctx: CyclotomicContext, rows: int, cols: int) -> Matrix:
    return [[ctx.zero] * cols for _ in range(rows)]


def identity(ctx: CyclotomicContext, n: int) -> Matrix:
    return [[ctx.one if i == j else ctx.zero for j in range(n)] for i in range(n)]


def to_matrix(ctx: CyclotomicContext, rows: Iterable[Iterable]) -> Matrix:
    return [[ctx.scalar(x) for x in row] for row in rows]


def transpose(M: Matrix) -> Matrix:
    return [list(col) for col in zip(*M)] if M else []


def matmul(A: Matrix, B: Matrix, ctx: Optional[CyclotomicContext] = None) -> Matrix:
    if not A:
        return []
    cols = len(B[0]) if B else 0
    zero = ctx.zero if ctx is not None else (A[0][0] * 0 if A[0] else None)
    out = []
    for row in A:
        acc = [zero] * cols
        for k, a in enumerate(row):
            if a:
                Bk = B[k]
                for j in range(cols):
                    if Bk[j]:
                        acc[j] = acc[j] + a * Bk[j]
        out.append(acc)
    return out


def matvec(A: Matrix, v: Sequence[Scalar]) -> list:
    out = []
    for row in A:
        acc = None
        for a, x in zip(row, v):
            t = a * x
            acc = t if acc is None else acc + t
        out.append(acc)
    return out


def mat_add(A: Matrix, B: Matrix) -> Matrix:
    return [[a + b for a, b in zip(ra, rb)] for ra, rb in zip(A, B)]


def mat_sub(A: Matrix, B: Matrix) -> Matrix:
    return [[a - b for a, b in zip(ra, rb)] for ra, rb in zip(A, B)]


def mat_scale(A: Matrix, c) -> Matrix:
    return [[a * c for a in row] for row in A]


def is_zero_matrix(A: Matrix) -> bool:
    return all(not x for row in A for x in row)


def kron(A: Matrix, B: Matrix) -> Matrix:
    out = []
    for ra in A:
        for rb in B:
            out.append([a * b for a in ra for b in rb])
    return out


def rref(M: Matrix) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form and pivot columns."""
    R = [list(row) for row in M]
    if not R:
        return R, []
    nrows, ncols = len(R), len(R[0])
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, nrows) if R[i][c]), None)
        if piv is None:
            continue
        R[r], R[piv] = R[piv], R[r]
        inv = R[r][c].inverse()
        R[r] = [x * inv for x in R[r]]
        for i in range(nrows):
            if i != r and R[i][c]:
                f = R[i][c]
                R[i] = [x - f * y for x, y in zip(R[i], R[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return R, pivots


def rank(M: Matrix) -> int:
    return len(rref(M)[1])


def row_basis(M: Matrix) -> Matrix:
    """Canonical basis (nonzero RREF rows) of the row space."""
    R, piv = rref(M)
    return R[:len(piv)]


def nullspace(M: Matrix, ctx: CyclotomicContext, ncols: Optional[int] = None) -> Matrix:
    """Basis of {v : M v = 0}, one vector per free column, normalized to 1 there."""
    if ncols is None:
        ncols = len(M[0]) if M else 0
    R, piv = rref(M) if M else ([], [])
    free = [c for c in range(ncols) if c not in piv]
    basis = []
    for f in free:
        v = [ctx.zero] * ncols
        v[f] = ctx.one
        for i, p in enumerate(piv):
            v[p] = -R[i][f]
        basis.append(v)
    return basis


def left_nullspace(M: Matrix, ctx: CyclotomicContext) -> Matrix:
    """Basis of {v : v M = 0}."""
    return nullspace(transpose(M), ctx, ncols=len(M))


def det(M: Matrix, ctx: CyclotomicContext) -> Scalar:
    n = len(M)
    A = [list(row) for row in M]
    d = ctx.one
    for c in range(n):
        piv = next((i for i in range(c, n) if A[i][c]), None)
        if piv is None:
            return ctx.zero
        if piv != c:
            A[c], A[piv] = A[piv], A[c]
            d = -d
        d = d * A[c][c]
        inv = A[c][c].inverse()
        for i in range(c + 1, n):
            if A[i][c]:
                f = A[i][c] * inv
                A[i] = [x - f * y for x, y in zip(A[i], A[c])]
    return d


def inverse(M: Matrix, ctx: CyclotomicContext) -> Matrix:
    n = len(M)
    aug = [list(row) + e for row, e in zip(M, identity(ctx, n))]
    R, piv = rref(aug)
    if piv[:n] != list(range(n)):
        raise ZeroDivisionError("matrix is singular")
    return [row[n:] for row in R]


def solve(M: Matrix, b: Sequence[Scalar], ctx: CyclotomicContext) -> Optional[list]:
    """Some x with M x = b, or None."""
    n = len(M[0]) if M else 0
    aug = [list(row) + [bi] for row, bi in zip(M, b)]
    R, piv = rref(aug)
    if n in piv:
        return None
    x = [ctx.zero] * n
    for i, p in enumerate(piv):
        x[p] = R[i][n]
    return x


def same_row_space(A: Matrix, B: Matrix) -> bool:
    return row_basis(A) == row_basis(B)


class SparseEliminator:
    """Incremental row reduction of sparse rows {column: Scalar}.

    Rows are kept fully reduced against each other's pivots, so the
    final echelon basis is canonical for a given column order.
    """

    def __init__(self, ctx: CyclotomicContext):
        self.ctx = ctx
        self.rows: dict = {}  # pivot column -> row dict with row[pivot] == 1

    @property
    def rank(self) -> int:
        return len(self.rows)

    def reduce(self, row: dict) -> dict:
        row = {c: v for c, v in row.items() if v}
        # stored rows vanish at each other's pivots, so one pass suffices
        for c in [c for c in row if c in self.rows]:
            f = row.get(c)
            if not f:
                continue
            for k, v in self.rows[c].items():
                nv = row.get(k, self.ctx.zero) - f * v
                if nv:
                    row[k] = nv
                else:
                    row.pop(k, None)
        return row

    def add(self, row: dict) -> bool:
        """Insert a row; returns True if the rank grew."""
        row = self.reduce(row)
        if not row:
            return False
        p = min(row)
        inv = row[p].inverse()
        row = {k: v * inv for k, v in row.items()}
        for q, other in self.rows.items():
            f = other.get(p)
            if f:
                for k, v in row.items():
                    nv = other.get(k, self.ctx.zero) - f * v
                    if nv:
                        other[k] = nv
                    else:
                        other.pop(k, None)
        self.rows[p] = row
        return True

    def kernel(self, ncols: int) -> Matrix:
        """Basis of the common kernel {v : row . v = 0 for all rows}."""
        ctx = self.ctx
        free = [c for c in range(ncols) if c not in self.rows]
        out = []
        for f in free:
            v = [ctx.zero] * ncols
            v[f] = ctx.one
            for p, row in self.rows.items():
                x = row.get(f)
                if x:
                    v[p] = -x
            out.append(v)
        return out
