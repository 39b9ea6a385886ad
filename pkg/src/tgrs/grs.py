"""GRS versus non-GRS: systematic forms, Schur squares and the Roth-Lempel test."""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .classify import mds_fast
from .code import TgrsCode, generator
from .matrix import Matrix, MatrixError, det_index, inverse, rank

GRS = "GRS"
NON_GRS_MDS = "NonGrsMDS"
NOT_MDS = "NotMDS"


@dataclass(frozen=True)
class SystematicForm:
    M: Matrix
    Mprime: Matrix | None  # entrywise inverse of M, None when M has a zero entry


def systematic_form(G: Matrix) -> SystematicForm:
    """M with G row-equivalent to [I_k | M], pivoting on the first k columns."""
    F = G.field
    k, n = G.shape
    Q = Matrix(F, [row[:k] for row in G.data], k)
    T = Matrix(F, [row[k:] for row in G.data], n - k)
    try:
        M = inverse(Q) @ T
    except MatrixError:
        raise MatrixError("leading k x k block of G is singular") from None
    if all(x for row in M.data for x in row):
        Mp = Matrix(F, [[F.inv(x) for x in row] for row in M.data], n - k)
    else:
        Mp = None
    return SystematicForm(M, Mp)


def schur_square_dim(G: Matrix) -> int:
    """Rank of all componentwise products of unordered pairs of rows of G."""
    F = G.field
    k = G.rows
    rows = []
    for i in range(k):
        for j in range(i, k):
            rows.append([F.mul(x, y) for x, y in zip(G.data[i], G.data[j])])
    return rank(Matrix(F, rows, G.cols))


def minors(M: Matrix, size: int):
    """Yield (rows, cols, value) for every size x size minor, lexicographically."""
    F = M.field
    for rs in combinations(range(M.rows), size):
        for cs in combinations(range(M.cols), size):
            yield rs, cs, det_index(F, [[M.data[r][c] for c in cs] for r in rs])


def roth_lempel_is_grs(sf: SystematicForm) -> bool:
    if sf.Mprime is None:
        return False
    if any(v == 0 for _, _, v in minors(sf.Mprime, 2)):
        return False
    return all(v == 0 for _, _, v in minors(sf.Mprime, 3))


def grs_classify(code: TgrsCode, table=None) -> str:
    ok, _ = mds_fast(code, table)
    if not ok:
        return NOT_MDS
    if min(code.k, code.n - code.k) < 3:
        return GRS
    return GRS if roth_lempel_is_grs(systematic_form(generator(code))) else NON_GRS_MDS


def triangular_twist_order(B: Matrix, n: int, k: int) -> int | None:
    """Order l of a lower-triangular twist block guaranteeing a non-GRS code.

    B must vanish outside rows k-l..k-1, columns 0..l-1, be lower triangular
    inside that block, be nonzero, and satisfy l < min(k, n-2k+1).  The
    smallest such l is returned, or None when B has no such shape.
    """
    supp = [(i, j) for i, row in enumerate(B.data) for j, x in enumerate(row) if x]
    if not supp:
        return None
    for ell in range(1, min(k, B.cols) + 1):
        if all(k - ell <= i and j <= i - (k - ell) for i, j in supp):
            return ell if ell < min(k, n - 2 * k + 1) else None
    return None
