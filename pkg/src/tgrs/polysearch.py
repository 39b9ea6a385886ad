"""Symbolic systematic forms over the free cells of B, and the GRS-locus polynomial.

With the free cells of B as variables, the leading k x k block Q of the
generator has determinant ``p`` and adj(Q) times the trailing block gives the
numerators ``pij`` of the systematic entries, so M[i][j] = pij / p at every
MDS assignment.  A 3x3 minor of the entrywise inverse of M, cleared of
denominators, is the polynomial ``P`` that vanishes at every GRS assignment.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, product

from .classify import mds_fast, subset_table
from .code import (EvalParams, GuardExceeded, InvariantViolation, TgrsCode, TwistMatrix,
                   generator)
from .grs import GRS, NON_GRS_MDS, NOT_MDS, grs_classify, systematic_form
from .matrix import Matrix, det_index, signed_permutations
from .poly import MultiPoly, count_zeros

SYMBOLIC_VAR_LIMIT = 12
CENSUS_LIMIT = 10 ** 8


@dataclass
class SymbolicSystem:
    params: EvalParams
    twist: TwistMatrix
    p: MultiPoly
    pij: list          # k x (n-k) grid of MultiPoly
    varmap: dict       # (row, col) of B -> variable index

    @property
    def nvars(self):
        return len(self.varmap)

    def code_at(self, values) -> TgrsCode:
        return TgrsCode(self.params, self.twist.assign(values))


def _sym_det(rows):
    """Cofactor expansion along the first row."""
    n = len(rows)
    if n == 1:
        return rows[0][0]
    total = None
    for j in range(n):
        if rows[0][j].is_zero():
            continue
        sub = [r[:j] + r[j + 1:] for r in rows[1:]]
        term = rows[0][j] * _sym_det(sub)
        if j % 2:
            term = -term
        total = term if total is None else total + term
    if total is None:
        return rows[0][0].scale(0)
    return total


def symbolic_generator(params: EvalParams, twist: TwistMatrix):
    F = params.field
    k, r = params.k, params.r
    cells = twist.free_cells
    if len(cells) > SYMBOLIC_VAR_LIMIT:
        raise GuardExceeded(f"{len(cells)} free cells exceeds the symbolic limit {SYMBOLIC_VAR_LIMIT}")
    nv = len(cells)
    varmap = {cell: i for i, cell in enumerate(cells)}
    rows = []
    for i in range(k):
        row = []
        for a, v in zip(params.alpha, params.nu):
            const = F.pow(a, i)
            poly = MultiPoly(F, nv)
            for s in range(r):
                w = F.pow(a, k + s)
                if (i, s) in varmap:
                    poly = poly + MultiPoly.variable(F, nv, varmap[(i, s)], w)
                else:
                    const = F.add(const, F.mul(twist.entries.data[i][s], w))
            poly = poly + MultiPoly.constant(F, nv, const)
            row.append(poly.scale(v))
        rows.append(row)
    return rows, varmap


def symbolic_system(params: EvalParams, twist: TwistMatrix) -> SymbolicSystem:
    k = params.k
    G, varmap = symbolic_generator(params, twist)
    Q = [row[:k] for row in G]
    T = [row[k:] for row in G]
    p = _sym_det(Q)
    # adj(Q)[j][i] = (-1)^(i+j) det(Q without row i, column j)
    adj = [[None] * k for _ in range(k)]
    for i in range(k):
        for j in range(k):
            if k == 1:
                c = MultiPoly.constant(params.field, len(varmap), 1)
            else:
                c = _sym_det([r[:j] + r[j + 1:] for idx, r in enumerate(Q) if idx != i])
            adj[j][i] = -c if (i + j) % 2 else c
    pij = []
    for i in range(k):
        row = []
        for j in range(params.r):
            acc = MultiPoly(params.field, len(varmap))
            for l in range(k):
                acc = acc + adj[i][l] * T[l][j]
            row.append(acc)
        pij.append(row)
    return SymbolicSystem(params, twist, p, pij, varmap)


def minor_numerator(system: SymbolicSystem, rowsel, colsel) -> MultiPoly:
    """sum over sigma of sign(sigma) * product of the six pij off the permutation."""
    rowsel, colsel = tuple(rowsel), tuple(colsel)
    k, r = system.params.k, system.params.r
    if len(rowsel) != 3 or len(colsel) != 3:
        raise ValueError("selections must have three rows and three columns")
    if min(k, r) < 3:
        raise ValueError("need min(k, n-k) >= 3 for a 3x3 minor")
    if any(not 0 <= i < k for i in rowsel) or any(not 0 <= j < r for j in colsel):
        raise ValueError("selection out of range")
    if len(set(rowsel)) != 3 or len(set(colsel)) != 3:
        raise ValueError("selection has repeated indices")
    F = system.params.field
    total = MultiPoly(F, system.nvars)
    for sign, perm in signed_permutations(3):
        term = MultiPoly.constant(F, system.nvars, 1)
        for a in range(3):
            for b in range(3):
                if perm[a] != b:
                    term = term * system.pij[rowsel[a]][colsel[b]]
        total = total + term if sign > 0 else total - term
    return total


def numeric_minor_of_inverse(code: TgrsCode, rowsel, colsel) -> int:
    """The selected 3x3 minor of the entrywise inverse of the systematic block."""
    sf = systematic_form(generator(code))
    if sf.Mprime is None:
        raise ValueError("systematic block has a zero entry")
    return det_index(code.field, [[sf.Mprime.data[i][j] for j in colsel] for i in rowsel])


def default_selection(system: SymbolicSystem, reference):
    """First (rows, cols) in lexicographic order with a nonzero minor at ``reference``."""
    code = system.code_at(reference)
    ok, _ = mds_fast(code)
    if not ok:
        raise ValueError("reference assignment is not MDS")
    sf = systematic_form(generator(code))
    if sf.Mprime is None:
        raise ValueError("reference assignment has a zero systematic entry")
    F = code.field
    for rs in combinations(range(code.k), 3):
        for cs in combinations(range(code.n - code.k), 3):
            if det_index(F, [[sf.Mprime.data[i][j] for j in cs] for i in rs]):
                return rs, cs
    raise ValueError("every 3x3 minor vanishes at the reference: it is a GRS point")


def assignments(q: int, nvars: int):
    """Odometer order over GF(q)^nvars, last variable fastest."""
    return product(range(q), repeat=nvars)


@dataclass
class ClassCensus:
    mds: int
    grs: int
    nongrs: int
    pzeros: int | None
    total: int
    grs_points: list
    nongrs_points: list
    status: dict    # assignment tuple -> GRS / NonGrsMDS / NotMDS


def census_classify(params: EvalParams, twist: TwistMatrix, P: MultiPoly | None = None,
                    reference=None, limit: int = CENSUS_LIMIT, build_p: bool = True) -> ClassCensus:
    """Classify every assignment of the free cells; check GRS points are zeros of P."""
    F = params.field
    nv = len(twist.free_cells)
    if F.q ** nv > limit:
        raise GuardExceeded(f"q^w = {F.q}^{nv} exceeds the guard {limit}")
    table = subset_table(params)
    status = {}
    grs_pts, non_pts = [], []
    for vals in assignments(F.q, nv):
        code = TgrsCode(params, twist.assign(vals))
        st = grs_classify(code, table)
        status[vals] = st
        if st == GRS:
            grs_pts.append(vals)
        elif st == NON_GRS_MDS:
            non_pts.append(vals)
    mds = len(grs_pts) + len(non_pts)
    pzeros = None
    if P is None and build_p and nv and min(params.k, params.r) >= 3:
        ref = reference if reference is not None else (non_pts[0] if non_pts else None)
        if ref is not None:
            system = symbolic_system(params, twist)
            P = minor_numerator(system, *default_selection(system, ref))
    if P is not None:
        pzeros = count_zeros(P)
        for pt in grs_pts:
            if P.eval_index(pt) != 0:
                raise InvariantViolation(f"GRS assignment {pt} is not a zero of P")
    return ClassCensus(mds, len(grs_pts), len(non_pts), pzeros, F.q ** nv,
                       grs_pts, non_pts, status)


__all__ = [
    "SymbolicSystem", "symbolic_system", "minor_numerator", "numeric_minor_of_inverse",
    "default_selection", "census_classify", "ClassCensus", "count_zeros", "assignments",
    "GRS", "NON_GRS_MDS", "NOT_MDS",
]
