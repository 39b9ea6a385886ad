"""Dense exact linear algebra over a finite field.

A ``Matrix`` keeps entries as field indices (see ``tgrs.ff``) in a list of
rows; indexing with ``M[i, j]`` hands back a ``Felt``.
"""
from __future__ import annotations

from itertools import permutations

from .ff import Felt, Field, FieldError


class MatrixError(ValueError):
    pass


class Matrix:
    __slots__ = ("field", "rows", "cols", "data")

    def __init__(self, field: Field, data, cols: int | None = None):
        self.field = field
        self.data = [[_as_index(field, x) for x in row] for row in data]
        self.rows = len(self.data)
        if cols is None:
            cols = len(self.data[0]) if self.data else 0
        self.cols = cols
        for row in self.data:
            if len(row) != cols:
                raise MatrixError("ragged matrix rows")

    @classmethod
    def zeros(cls, field, rows, cols):
        return cls(field, [[0] * cols for _ in range(rows)], cols)

    @classmethod
    def identity(cls, field, n):
        return cls(field, [[int(i == j) for j in range(n)] for i in range(n)], n)

    @classmethod
    def diag(cls, field, values):
        vals = [_as_index(field, v) for v in values]
        n = len(vals)
        return cls(field, [[vals[i] if i == j else 0 for j in range(n)] for i in range(n)], n)

    def __getitem__(self, ij) -> Felt:
        i, j = ij
        return Felt(self.field, self.data[i][j])

    @property
    def shape(self):
        return (self.rows, self.cols)

    def copy(self):
        return Matrix(self.field, [row[:] for row in self.data], self.cols)

    def transpose(self):
        return Matrix(self.field, [[row[j] for row in self.data] for j in range(self.cols)], self.rows)

    T = property(transpose)

    def __matmul__(self, other: Matrix) -> Matrix:
        if self.cols != other.rows:
            raise MatrixError(f"shape mismatch {self.shape} @ {other.shape}")
        F = self.field
        add, mul = F.add, F.mul
        cols_b = [[row[j] for row in other.data] for j in range(other.cols)]
        out = []
        for row in self.data:
            new = []
            for col in cols_b:
                acc = 0
                for x, y in zip(row, col):
                    if x and y:
                        acc = add(acc, mul(x, y))
                new.append(acc)
            out.append(new)
        return Matrix(F, out, other.cols)

    def __add__(self, other):
        F = self.field
        if self.shape != other.shape:
            raise MatrixError("shape mismatch in addition")
        return Matrix(F, [[F.add(x, y) for x, y in zip(r, s)] for r, s in zip(self.data, other.data)], self.cols)

    def __sub__(self, other):
        F = self.field
        if self.shape != other.shape:
            raise MatrixError("shape mismatch in subtraction")
        return Matrix(F, [[F.sub(x, y) for x, y in zip(r, s)] for r, s in zip(self.data, other.data)], self.cols)

    def __neg__(self):
        F = self.field
        return Matrix(F, [[F.neg(x) for x in r] for r in self.data], self.cols)

    def scale(self, c) -> Matrix:
        F = self.field
        c = _as_index(F, c)
        return Matrix(F, [[F.mul(c, x) for x in r] for r in self.data], self.cols)

    def hstack(self, other):
        if self.rows != other.rows:
            raise MatrixError("row count mismatch in hstack")
        return Matrix(self.field, [r + s for r, s in zip(self.data, other.data)], self.cols + other.cols)

    def vstack(self, other):
        if self.cols != other.cols:
            raise MatrixError("column count mismatch in vstack")
        return Matrix(self.field, [r[:] for r in self.data] + [r[:] for r in other.data], self.cols)

    def is_zero(self):
        return all(x == 0 for row in self.data for x in row)

    def __eq__(self, other):
        return (isinstance(other, Matrix) and self.field == other.field
                and self.shape == other.shape and self.data == other.data)

    def __hash__(self):
        return hash((self.shape, tuple(map(tuple, self.data))))

    def __repr__(self):
        return format_matrix(self)


def _as_index(field: Field, x) -> int:
    if isinstance(x, Felt):
        if x.field != field:
            raise FieldError("matrix entry from a different field")
        return x.index
    if isinstance(x, int):
        if 0 <= x < field.q:
            return x
        raise FieldError(f"index {x} out of range for {field!r}")
    if isinstance(x, str):
        return field.parse(x)
    raise TypeError(f"cannot use {type(x).__name__} as a field element")


def det(M: Matrix) -> Felt:
    if M.rows != M.cols:
        raise MatrixError("determinant of a non-square matrix")
    return Felt(M.field, det_index(M.field, M.data))


def det_index(F: Field, rows) -> int:
    """Determinant by Gaussian elimination on a scratch copy of ``rows``."""
    a = [list(r) for r in rows]
    n = len(a)
    d = 1
    sub, mul, inv = F.sub, F.mul, F.inv
    for c in range(n):
        piv = c
        while piv < n and a[piv][c] == 0:
            piv += 1
        if piv == n:
            return 0
        if piv != c:
            a[c], a[piv] = a[piv], a[c]
            d = F.neg(d)
        pr = a[c]
        d = mul(d, pr[c])
        ip = inv(pr[c])
        for r in range(c + 1, n):
            row = a[r]
            f = row[c]
            if f:
                f = mul(f, ip)
                for j in range(c + 1, n):
                    if pr[j]:
                        row[j] = sub(row[j], mul(f, pr[j]))
    return d


def rref(M: Matrix):
    """Reduced row echelon form; returns (R, rank, pivot columns)."""
    F = M.field
    a = [row[:] for row in M.data]
    pivots = []
    r = 0
    for c in range(M.cols):
        if r == M.rows:
            break
        piv = r
        while piv < M.rows and a[piv][c] == 0:
            piv += 1
        if piv == M.rows:
            continue
        a[r], a[piv] = a[piv], a[r]
        ip = F.inv(a[r][c])
        a[r] = [F.mul(ip, x) for x in a[r]]
        pr = a[r]
        for i in range(M.rows):
            if i != r and a[i][c]:
                f = a[i][c]
                a[i] = [F.sub(x, F.mul(f, y)) for x, y in zip(a[i], pr)]
        pivots.append(c)
        r += 1
    return Matrix(F, a, M.cols), r, pivots


def rank(M: Matrix) -> int:
    return rref(M)[1]


def inverse(M: Matrix) -> Matrix:
    if M.rows != M.cols:
        raise MatrixError("inverse of a non-square matrix")
    n = M.rows
    R, rk, _ = rref(M.hstack(Matrix.identity(M.field, n)))
    if rk < n or any(R.data[i][i] != 1 for i in range(n)):
        raise MatrixError("matrix is singular")
    return Matrix(M.field, [row[n:] for row in R.data], n)


def nullspace(M: Matrix) -> Matrix:
    """Basis of the right null space {x : M x = 0}, one vector per row."""
    F = M.field
    R, rk, pivots = rref(M)
    free = [c for c in range(M.cols) if c not in pivots]
    basis = []
    for fc in free:
        v = [0] * M.cols
        v[fc] = 1
        for i, pc in enumerate(pivots):
            v[pc] = F.neg(R.data[i][fc])
        basis.append(v)
    return Matrix(F, basis, M.cols)


def minor_matrix(M: Matrix, i: int, j: int) -> Matrix:
    return Matrix(M.field, [row[:j] + row[j + 1:] for r, row in enumerate(M.data) if r != i], M.cols - 1)


def _cofactor_adjugate(M: Matrix) -> Matrix:
    F = M.field
    n = M.rows
    if n == 1:
        return Matrix(F, [[1]], 1)
    adj = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            c = det_index(F, minor_matrix(M, i, j).data)
            adj[j][i] = F.neg(c) if (i + j) % 2 else c
    return Matrix(F, adj, n)


def adjugate(M: Matrix) -> Matrix:
    if M.rows != M.cols:
        raise MatrixError("adjugate of a non-square matrix")
    if M.rows <= 4:
        return _cofactor_adjugate(M)
    d = det_index(M.field, M.data)
    if d == 0:
        return _cofactor_adjugate(M)
    return inverse(M).scale(d)


def vandermonde(points, rows: int, field: Field | None = None) -> Matrix:
    """r x n matrix with entry (i, j) = points[j]**i."""
    if field is None:
        field = points[0].field
    pts = [_as_index(field, x) for x in points]
    return Matrix(field, [[field.pow(x, i) for x in pts] for i in range(rows)], len(pts))


def select_columns(M: Matrix, idx) -> Matrix:
    idx = list(idx)
    if any(b <= a for a, b in zip(idx, idx[1:])):
        raise MatrixError("column indices must be strictly increasing")
    if idx and (idx[0] < 0 or idx[-1] >= M.cols):
        raise MatrixError("column index out of range")
    return Matrix(M.field, [[row[j] for j in idx] for row in M.data], len(idx))


def select_rows(M: Matrix, idx) -> Matrix:
    return Matrix(M.field, [M.data[i][:] for i in idx], M.cols)


def perm_sign(perm) -> int:
    sign = 1
    seen = [False] * len(perm)
    for i in range(len(perm)):
        if not seen[i]:
            j, length = i, 0
            while not seen[j]:
                seen[j] = True
                j = perm[j]
                length += 1
            if length % 2 == 0:
                sign = -sign
    return sign


def signed_permutations(n: int):
    """All (sign, permutation) pairs of range(n) in lexicographic order."""
    return [(perm_sign(p), p) for p in permutations(range(n))]


# --- text format: rows split by ';', entries by ',' ---

def split_top(text: str, sep: str) -> list[str]:
    """Split on ``sep`` outside square brackets."""
    parts, depth, cur = [], 0, []
    for ch in text:
        if ch == "[":
            depth += 1
        elif ch == "]":
            depth -= 1
        if ch == sep and depth == 0:
            parts.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    parts.append("".join(cur))
    return parts


def parse_matrix(field: Field, text: str) -> Matrix:
    rows = [r for r in split_top(text.strip(), ";") if r.strip()]
    data = [[field.parse(tok) for tok in split_top(r, ",")] for r in rows]
    return Matrix(field, data)


def format_matrix(M: Matrix) -> str:
    fmt = M.field.format
    return ";".join(",".join(fmt(x) for x in row) for row in M.data)
