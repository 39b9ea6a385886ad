"""MDS, NMDS and self-duality tests for TGRS codes, plus the parity-check matrix.

Subsets of column positions are 0-based sorted tuples, always visited in
lexicographic order, so reported witnesses are the first failures in that
order.
"""
from __future__ import annotations

from dataclasses import asdict, dataclass
from functools import lru_cache
from itertools import combinations
from math import comb

from .code import (BRUTE_FORCE_LIMIT, CodeError, EvalParams, GuardExceeded, TgrsCode,
                   generator, min_weight)
from .ff import Felt
from .matrix import Matrix, det_index, rank, select_columns

ORACLE_LIMIT = 10 ** 6


class PreconditionError(ValueError):
    pass


@dataclass(frozen=True)
class SubsetData:
    subset: tuple
    c: tuple       # prod_{i in T}(x - a_i) = sum_j c_j x^(k-j), c_0 = 1
    e: tuple       # inverse sequence of c, length n-k
    F: Matrix      # (n-k) x k, row t expresses a^(k+t) in the basis 1..a^(k-1)


@dataclass(frozen=True)
class FullProductData:
    c_full: tuple  # prod_{i}(x - a_i) = sum_j c_j x^(n-j)
    u: tuple       # u_i = prod_{j != i}(a_i - a_j)^-1


@dataclass
class ClassificationReport:
    is_mds: bool
    witness_subset: tuple | None = None
    is_nmds: bool | None = None
    is_selfdual: bool | None = None
    selfdual_sufficient: bool | None = None
    grs_status: str | None = None
    schur_dim: int | None = None
    d: int | None = None
    defect: int | None = None
    notes: list | None = None

    def to_dict(self):
        out = asdict(self)
        if out["witness_subset"] is not None:
            out["witness_subset"] = list(out["witness_subset"])
        return out


def poly_from_roots(F, roots) -> list[int]:
    """Coefficients c_0..c_len of prod (x - r), highest degree first."""
    c = [1]
    for a in roots:
        c = c + [0]
        for j in range(len(c) - 1, 0, -1):
            c[j] = F.sub(c[j], F.mul(a, c[j - 1]))
    return c


def inverse_sequence(F, c, length: int) -> list[int]:
    """e_0 = 1, e_i = -sum_{j<i} e_j c_{i-j}; c beyond its length counts as 0."""
    e = [1]
    for i in range(1, length):
        acc = 0
        for j in range(i):
            ci = c[i - j] if i - j < len(c) else 0
            if ci and e[j]:
                acc = F.add(acc, F.mul(e[j], ci))
        e.append(F.neg(acc))
    return e[:length]


def _check_subset(params: EvalParams, T):
    T = tuple(T)
    if len(T) != params.k or any(b <= a for a, b in zip(T, T[1:])) or T[0] < 0 or T[-1] >= params.n:
        raise CodeError(f"{T} is not a sorted {params.k}-subset of range({params.n})")
    return T


def subset_data(params: EvalParams, T) -> SubsetData:
    T = _check_subset(params, T)
    Fq = params.field
    k, r = params.k, params.r
    c = poly_from_roots(Fq, [params.alpha[t] for t in T])
    e = inverse_sequence(Fq, c, r)
    rows = []
    for t in range(r):
        row = []
        for s in range(k):
            acc = 0
            for i in range(min(t, s) + 1):
                acc = Fq.add(acc, Fq.mul(c[i + k - s], e[t - i]))
            row.append(Fq.neg(acc))
        rows.append(row)
    return SubsetData(T, tuple(c), tuple(e), Matrix(Fq, rows, k))


@lru_cache(maxsize=64)
def subset_table(params: EvalParams) -> tuple:
    """SubsetData for every k-subset, lexicographic; shared across B candidates."""
    return tuple(subset_data(params, T) for T in combinations(range(params.n), params.k))


def twisted_det(B: Matrix, Fmat: Matrix) -> int:
    """det(I_k + B F_T) as a field index."""
    Fq = B.field
    k = B.rows
    M = B @ Fmat
    rows = M.data
    for i in range(k):
        rows[i][i] = Fq.add(rows[i][i], 1)
    return det_index(Fq, rows)


def mds_fast(code: TgrsCode, table=None):
    """(is_mds, first failing subset or None) from det(I + B F_T) != 0."""
    B = code.B
    if B.is_zero():
        return True, None
    for sd in table if table is not None else subset_table(code.params):
        if twisted_det(B, sd.F) == 0:
            return False, sd.subset
    return True, None


def first_singular_subset(G: Matrix, limit: int = ORACLE_LIMIT):
    k, n = G.shape
    if comb(n, k) > limit:
        raise GuardExceeded(f"C({n},{k}) minors exceeds the guard {limit}")
    for T in combinations(range(n), k):
        if det_index(G.field, [[row[j] for j in T] for row in G.data]) == 0:
            return T
    return None


def mds_oracle(code: TgrsCode, limit: int = ORACLE_LIMIT) -> bool:
    """MDS iff every k x k minor of the generator is nonzero."""
    return first_singular_subset(generator(code), limit) is None


# --- closed forms for structured B ---

def _support(B: Matrix):
    return {(i, j) for i, row in enumerate(B.data) for j, x in enumerate(row) if x}


def infer_block_order(B: Matrix, pattern: str) -> int:
    """Smallest l whose diagonal (cor4) or full (cor5) block holds the support of B."""
    k, r = B.shape
    supp = _support(B)
    for ell in range(0, min(k, r) + 1):
        if all(_in_block(i, j, k, ell, pattern) for i, j in supp):
            return ell
    raise PreconditionError(f"B does not have the {pattern} block shape")


def _in_block(i, j, k, ell, pattern):
    if not (k - ell <= i < k and 0 <= j < ell):
        return False
    return pattern == "cor5" or j == i - (k - ell)


def specialized_mds(code: TgrsCode, pattern: str, ell: int | None = None, table=None) -> bool:
    """MDS test through the closed form that matches a structured B.

    cor1: only b_{0,0};  cor2: only b_{k-1,0};  cor4: diagonal l x l block in
    rows k-l..k-1, columns 0..l-1;  cor5: full block there, l < min(k, n-k).
    """
    Fq = code.field
    B = code.B
    k, n = code.k, code.n
    supp = _support(B)
    table = table if table is not None else subset_table(code.params)
    alpha = code.params.alpha
    if pattern == "cor1":
        if not supp <= {(0, 0)}:
            raise PreconditionError("cor1 needs B zero outside b_{0,0}")
        b = B.data[0][0]
        sign = 1 if k % 2 == 0 else Fq.neg(1)
        for sd in table:
            prod = 1
            for t in sd.subset:
                prod = Fq.mul(prod, alpha[t])
            if Fq.mul(Fq.mul(b, sign), prod) == 1:
                return False
        return True
    if pattern == "cor2":
        if not supp <= {(k - 1, 0)}:
            raise PreconditionError("cor2 needs B zero outside b_{k-1,0}")
        b = B.data[k - 1][0]
        minus_one = Fq.neg(1)
        for sd in table:
            s = 0
            for t in sd.subset:
                s = Fq.add(s, alpha[t])
            if Fq.mul(b, s) == minus_one:
                return False
        return True
    if pattern not in ("cor4", "cor5"):
        raise PreconditionError(f"unknown pattern {pattern!r}")
    if ell is None:
        ell = infer_block_order(B, pattern)
    if not 0 <= ell < min(k, n - k):
        raise PreconditionError(f"block order l={ell} must satisfy l < min(k, n-k) = {min(k, n - k)}")
    if not all(_in_block(i, j, k, ell, pattern) for i, j in supp):
        raise PreconditionError(f"B does not fit the {pattern} block of order {ell}")
    for sd in table:
        f = sd.F.data
        block = []
        for a in range(ell):
            row_b = B.data[k - ell + a]
            row = []
            for s in range(ell):
                acc = 1 if a == s else 0
                for j in range(ell):
                    if row_b[j]:
                        acc = Fq.add(acc, Fq.mul(row_b[j], f[j][k - ell + s]))
                row.append(acc)
            block.append(row)
        if det_index(Fq, block) == 0:
            return False
    return True


# --- near-MDS ---

def _column_rank(G: Matrix, cols) -> int:
    return rank(select_columns(G, cols))


def nmds_rank_conditions(G: Matrix, limit: int = ORACLE_LIMIT):
    """The three column-rank conditions characterising NMDS generators."""
    k, n = G.shape
    if comb(n, min(k + 1, n)) > limit or comb(n, k) > limit:
        raise GuardExceeded(f"C({n},{k + 1}) column subsets exceeds the guard {limit}")
    dependent_k = any(_column_rank(G, T) < k for T in combinations(range(n), k))
    if k + 1 <= n:
        all_k1_full = all(_column_rank(G, J) == k for J in combinations(range(n), k + 1))
    else:
        all_k1_full = True
    if k >= 2:
        all_km1_indep = all(_column_rank(G, S) == k - 1 for S in combinations(range(n), k - 1))
    else:
        all_km1_indep = True
    return dependent_k, all_k1_full, all_km1_indep


def nmds_check(code: TgrsCode, limit: int = ORACLE_LIMIT) -> dict:
    """NMDS verdict from column ranks, plus (S(C), S(C_dual)) when enumerable."""
    G = generator(code)
    c1, c2, c3 = nmds_rank_conditions(G, limit)
    defects = None
    try:
        d = min_weight(G)
        d_dual = min_weight(parity_check(code))
        defects = (code.n - code.k + 1 - d, code.k + 1 - d_dual)
    except GuardExceeded:
        pass
    return {"nmds": c1 and c2 and c3, "conditions": (c1, c2, c3), "defects": defects}


def nmds_selfdual(code: TgrsCode, table=None) -> bool:
    """NMDS test for a self-dual code outside Omega.

    True iff every (k+1)-subset J contains a k-subset T with
    det(I + B F_T) != 0.
    """
    if not selfdual_direct(code):
        raise PreconditionError("nmds_selfdual needs a self-dual code")
    table = table if table is not None else subset_table(code.params)
    ok = {sd.subset: twisted_det(code.B, sd.F) != 0 for sd in table}
    if all(ok.values()):
        raise PreconditionError("nmds_selfdual needs B outside Omega (code is MDS)")
    for J in combinations(range(code.n), code.k + 1):
        if not any(ok[T] for T in combinations(J, code.k)):
            return False
    return True


# --- duality ---

def full_product_data(params: EvalParams) -> FullProductData:
    Fq = params.field
    c_full = poly_from_roots(Fq, params.alpha)
    u = []
    for i, a in enumerate(params.alpha):
        prod = 1
        for j, b in enumerate(params.alpha):
            if j != i:
                prod = Fq.mul(prod, Fq.sub(a, b))
        u.append(Fq.inv(prod))
    return FullProductData(tuple(c_full), tuple(u))


def _c(c, idx):
    return c[idx] if 0 <= idx < len(c) else 0


def parity_check(code: TgrsCode) -> Matrix:
    """H = [-J B^T | J] C V_n U with U = diag(u_i / v_i)."""
    Fq = code.field
    p = code.params
    n, k, r = p.n, p.k, p.r
    fp = full_product_data(p)
    J = Matrix(Fq, [[int(i + j == r - 1) for j in range(r)] for i in range(r)], r)
    left = (-(J @ code.B.T)).hstack(J)
    C = Matrix(Fq, [[_c(fp.c_full, n - 1 - i - j) for j in range(n)] for i in range(n)], n)
    V = Matrix(Fq, [[Fq.pow(a, i) for a in p.alpha] for i in range(n)], n)
    U = Matrix.diag(Fq, [Fq.div(u, v) for u, v in zip(fp.u, p.nu)])
    return left @ C @ V @ U


def selfdual_sufficient(code: TgrsCode):
    """Both sufficient conditions for self-duality; returns (holds, lambda)."""
    Fq = code.field
    p = code.params
    n, k = p.n, p.k
    if n != 2 * k:
        raise PreconditionError(f"self-duality needs n = 2k, got n={n}, k={k}")
    fp = full_product_data(p)
    lam = Fq.div(Fq.mul(p.nu[0], p.nu[0]), fp.u[0])
    cond1 = all(Fq.mul(v, v) == Fq.mul(lam, u) for v, u in zip(p.nu, fp.u))
    c = fp.c_full
    D = Matrix(Fq, [[_c(c, n - 1 - i - j) for j in range(k)] for i in range(k)], k)
    N = Matrix(Fq, [[_c(c, k - 1 - i - j) for j in range(k)] for i in range(k)], k)
    B = code.B
    cond2 = (B.T @ D @ B) == (N @ B) + (B.T @ N)
    return cond1 and cond2, (Felt(Fq, lam) if cond1 else None)


def selfdual_direct(code: TgrsCode) -> bool:
    if code.n != 2 * code.k:
        return False
    G = generator(code)
    return (G @ G.T).is_zero()
