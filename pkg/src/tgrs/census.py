"""Exhaustive census of MDS twist matrices over the wildcard cells of B.

Candidates are numbered in odometer order over the free cells (first cell
most significant, last cell fastest).  Work is split into contiguous index
ranges aligned to leading-cell prefixes and run on a thread pool; the
compiled kernel releases the GIL.  Per-chunk tallies are merged in chunk
order, so counts, histograms and sample listings never depend on the
thread count.
"""
from __future__ import annotations

import json
import os
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field as dc_field
from pathlib import Path

import numpy as np

from .classify import subset_table, twisted_det
from .code import EvalParams, GuardExceeded, TwistMatrix

try:
    import numba
except ImportError:  # pragma: no cover - numba is a declared dependency
    numba = None

TIERS = {"quick": 10 ** 6, "standard": 10 ** 8, "long": 10 ** 10}
CHUNK_TARGET = 1 << 18


def tier_guard(tier: str) -> int:
    try:
        return TIERS[tier]
    except KeyError:
        raise ValueError(f"unknown tier {tier!r}; choose from {', '.join(TIERS)}") from None


@dataclass
class CensusReport:
    total: int
    omega_count: int
    sample_members: list
    elapsed: float
    first_failure: list          # candidates whose first singular subset is T, per lex subset
    subsets: list
    free_cells: list
    complete: bool = True
    done: int = 0
    backend: str = ""
    extra: dict = dc_field(default_factory=dict)

    def to_dict(self, with_elapsed=True):
        d = {
            "total": self.total,
            "omega_count": self.omega_count,
            "complete": self.complete,
            "done": self.done,
            "free_cells": [list(c) for c in self.free_cells],
            "first_failure": {",".join(map(str, T)): n
                              for T, n in zip(self.subsets, self.first_failure) if n},
            "sample_members": [m.data for m in self.sample_members],
        }
        if with_elapsed:
            d["elapsed"] = round(self.elapsed, 3)
        return d


@dataclass
class _Prepared:
    params: EvalParams
    twist: TwistMatrix
    cells: list
    subsets: list
    base: np.ndarray     # (nsub, k, k): I + B_fixed F_T
    frows: np.ndarray    # (nsub, r, k): F_T
    ci: np.ndarray       # free-cell rows
    cj: np.ndarray       # free-cell columns
    total: int


def prepare(params: EvalParams, twist: TwistMatrix) -> _Prepared:
    """Subset pre-pass shared by every candidate."""
    F = params.field
    k, r = params.k, params.r
    table = subset_table(params)
    fixed = twist.entries
    base = np.zeros((len(table), k, k), dtype=np.int64)
    frows = np.zeros((len(table), r, k), dtype=np.int64)
    for t, sd in enumerate(table):
        M = fixed @ sd.F
        for i in range(k):
            M.data[i][i] = F.add(M.data[i][i], 1)
        base[t] = M.data
        frows[t] = sd.F.data
    cells = twist.free_cells
    ci = np.array([c[0] for c in cells], dtype=np.int64)
    cj = np.array([c[1] for c in cells], dtype=np.int64)
    return _Prepared(params, twist, cells, [sd.subset for sd in table], base, frows,
                     ci, cj, F.q ** len(cells))


def decode(index: int, q: int, w: int) -> tuple:
    """Free-cell values of candidate ``index`` (first cell most significant)."""
    vals = [0] * w
    for pos in range(w - 1, -1, -1):
        index, vals[pos] = divmod(index, q)
    return tuple(vals)


def encode_values(values, q: int) -> int:
    idx = 0
    for v in values:
        idx = idx * q + v
    return idx


# compiled kernels ----------------------------------------------------------

def _build_kernels():
    if numba is None:
        return None
    njit = numba.njit(nogil=True, cache=False)

    @njit
    def det_table(M, k, add, sub, mul, inv):
        # Gaussian elimination in place; returns 0 or 1 (nonzero)
        for col in range(k):
            piv = -1
            for row in range(col, k):
                if M[row, col] != 0:
                    piv = row
                    break
            if piv < 0:
                return 0
            if piv != col:
                for j in range(col, k):
                    tmp = M[col, j]
                    M[col, j] = M[piv, j]
                    M[piv, j] = tmp
            ip = inv[M[col, col]]
            for row in range(col + 1, k):
                f = M[row, col]
                if f != 0:
                    f = mul[f, ip]
                    for j in range(col, k):
                        M[row, j] = sub[M[row, j], mul[f, M[col, j]]]
        return 1

    @njit
    def det_mod(M, k, p):
        for col in range(k):
            piv = -1
            for row in range(col, k):
                if M[row, col] != 0:
                    piv = row
                    break
            if piv < 0:
                return 0
            if piv != col:
                for j in range(col, k):
                    tmp = M[col, j]
                    M[col, j] = M[piv, j]
                    M[piv, j] = tmp
            # Fermat inverse
            b = M[col, col]
            e = p - 2
            ip = 1
            while e:
                if e & 1:
                    ip = ip * b % p
                b = b * b % p
                e >>= 1
            for row in range(col + 1, k):
                f = M[row, col]
                if f != 0:
                    f = f * ip % p
                    for j in range(col, k):
                        M[row, j] = (M[row, j] - f * M[col, j]) % p
        return 1

    @njit
    def run_chunk(start, stop, q, w, k, base, frows, ci, cj, add, sub, mul, inv, p, use_tables,
                  early_exit, limit, hist, samples):
        nsub = base.shape[0]
        digits = np.zeros(w, dtype=np.int64)
        idx = start
        for pos in range(w - 1, -1, -1):
            digits[pos] = idx % q
            idx //= q
        M = np.zeros((k, k), dtype=np.int64)
        count = 0
        nsamp = 0
        for cand in range(start, stop):
            first = -1
            for t in range(nsub):
                for a in range(k):
                    for b in range(k):
                        M[a, b] = base[t, a, b]
                for c in range(w):
                    v = digits[c]
                    if v != 0:
                        i = ci[c]
                        j = cj[c]
                        if use_tables:
                            for b in range(k):
                                M[i, b] = add[M[i, b], mul[v, frows[t, j, b]]]
                        else:
                            for b in range(k):
                                M[i, b] = (M[i, b] + v * frows[t, j, b]) % p
                if use_tables:
                    nz = det_table(M, k, add, sub, mul, inv)
                else:
                    nz = det_mod(M, k, p)
                if nz == 0 and first < 0:
                    first = t
                    if early_exit:
                        break
            if first < 0:
                if nsamp < limit:
                    samples[nsamp] = cand
                nsamp += 1
                count += 1
            else:
                hist[first] += 1
            # odometer step, last cell fastest
            pos = w - 1
            while pos >= 0:
                digits[pos] += 1
                if digits[pos] < q:
                    break
                digits[pos] = 0
                pos -= 1
        return count

    return run_chunk


_KERNEL = None


def _kernel():
    global _KERNEL
    if _KERNEL is None:
        _KERNEL = _build_kernels()
    return _KERNEL


def _backend(F):
    if numba is None:
        return "python"
    if F.kernel_tables() is not None:
        return "table"
    if F.m == 1 and F.p < 3_000_000_000:
        return "modular"
    return "python"


def _chunk_python(prep: _Prepared, start, stop, early_exit, limit):
    F = prep.params.field
    q, w = F.q, len(prep.cells)
    table = subset_table(prep.params)
    hist = [0] * len(table)
    samples = []
    count = 0
    for cand in range(start, stop):
        B = prep.twist.assign(decode(cand, q, w)).entries
        first = -1
        for t, sd in enumerate(table):
            if twisted_det(B, sd.F) == 0 and first < 0:
                first = t
                if early_exit:
                    break
        if first < 0:
            if len(samples) < limit:
                samples.append(cand)
            count += 1
        else:
            hist[first] += 1
    return count, hist, samples


def _chunk_compiled(prep: _Prepared, start, stop, early_exit, limit, mode):
    F = prep.params.field
    if mode == "table":
        add, sub, mul, inv = (np.asarray(t, dtype=np.int64) for t in F.kernel_tables())
        p, use_tables = F.p, True
    else:
        add = sub = mul = np.zeros((1, 1), dtype=np.int64)
        inv = np.zeros(1, dtype=np.int64)
        p, use_tables = F.p, False
    hist = np.zeros(len(prep.subsets), dtype=np.int64)
    samples = np.zeros(max(limit, 1), dtype=np.int64)
    count = _kernel()(start, stop, F.q, len(prep.cells), prep.params.k, prep.base, prep.frows,
                      prep.ci, prep.cj, add, sub, mul, inv, p, use_tables, early_exit, limit,
                      hist, samples)
    return int(count), hist.tolist(), samples[:min(limit, count)].tolist()


def chunk_ranges(q: int, w: int, target: int | None = None):
    """Contiguous candidate ranges, each a block of leading-cell prefixes."""
    target = CHUNK_TARGET if target is None else target
    total = q ** w
    step = 1
    d = w
    while d > 0 and step * q <= target:
        step *= q
        d -= 1
    return [(s, min(s + step, total)) for s in range(0, total, step)]


def run_census(params: EvalParams, twist: TwistMatrix, *, threads: int = 1, tier: str = "standard",
               limit: int = 0, early_exit: bool = True, backend: str | None = None,
               checkpoint: str | os.PathLike | None = None, resume: bool = False,
               progress=None) -> CensusReport:
    """Count the MDS assignments of the wildcard cells (the set Omega)."""
    F = params.field
    w = len(twist.free_cells)
    guard = tier_guard(tier)
    if F.q ** w > guard:
        raise GuardExceeded(f"q^w = {F.q}^{w} = {F.q ** w} exceeds the {tier} tier guard {guard}")
    if threads < 1:
        raise ValueError("threads must be at least 1")
    t0 = time.perf_counter()
    prep = prepare(params, twist)
    mode = backend or _backend(F)
    if mode not in ("table", "modular", "python"):
        raise ValueError(f"unknown backend {mode!r}")
    if mode != "python" and numba is None:
        mode = "python"
    ranges = chunk_ranges(F.q, w)
    results = {}
    fingerprint = _fingerprint(prep, early_exit)
    if resume and checkpoint and Path(checkpoint).exists():
        results = _load_checkpoint(checkpoint, fingerprint, len(ranges))

    def work(ix):
        s, e = ranges[ix]
        if mode == "python":
            return ix, _chunk_python(prep, s, e, early_exit, limit)
        return ix, _chunk_compiled(prep, s, e, early_exit, limit, mode)

    todo = [ix for ix in range(len(ranges)) if ix not in results]
    if mode != "python":
        _kernel()  # build once, before worker threads race to do it
    complete = True
    pool = ThreadPoolExecutor(max_workers=threads)
    try:
        for ix, res in pool.map(work, todo):
            results[ix] = res
            if progress is not None:
                progress(len(results), len(ranges))
    except KeyboardInterrupt:
        complete = False
        pool.shutdown(wait=False, cancel_futures=True)
        if checkpoint:
            _save_checkpoint(checkpoint, fingerprint, results)
    else:
        pool.shutdown()
    count = 0
    hist = [0] * len(prep.subsets)
    samples = []
    done = 0
    for ix in sorted(results):
        c, h, smp = results[ix]
        count += c
        hist = [a + b for a, b in zip(hist, h)]
        samples.extend(smp)
        done += ranges[ix][1] - ranges[ix][0]
    if complete and checkpoint and Path(checkpoint).exists():
        Path(checkpoint).unlink()
    members = [twist.assign(decode(i, F.q, w)).entries for i in samples[:limit]]
    return CensusReport(prep.total, count, members, time.perf_counter() - t0, hist,
                        prep.subsets, prep.cells, complete, done, mode)


def _fingerprint(prep: _Prepared, early_exit) -> str:
    p = prep.params
    return json.dumps([p.field.p, p.field.m, list(p.field.modulus or ()), p.n, p.k, list(p.alpha),
                       list(p.nu), prep.twist.entries.data, [list(c) for c in prep.cells],
                       CHUNK_TARGET, bool(early_exit)])


def _save_checkpoint(path, fingerprint, results):
    payload = {"fingerprint": fingerprint,
               "chunks": {str(ix): [c, h, s] for ix, (c, h, s) in sorted(results.items())}}
    tmp = Path(str(path) + ".tmp")
    tmp.write_text(json.dumps(payload))
    tmp.replace(path)


def _load_checkpoint(path, fingerprint, nchunks):
    payload = json.loads(Path(path).read_text())
    if payload.get("fingerprint") != fingerprint:
        raise ValueError(f"checkpoint {path} belongs to a different census")
    out = {}
    for ix, (c, h, s) in payload["chunks"].items():
        ix = int(ix)
        if not 0 <= ix < nchunks:
            raise ValueError(f"checkpoint {path} has an out-of-range chunk {ix}")
        out[ix] = (c, h, s)
    return out
