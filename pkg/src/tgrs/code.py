"""Twisted generalized Reed-Solomon codes: construction and basic properties.

The twist and position sets are always the full ranges, so a code is fixed
by its evaluation parameters and a k x (n-k) coefficient matrix B.  Row i of
the generator evaluates g_i(x) = x^i + sum_j B[i][j] x^(k+j), scaled
column-wise by nu.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field as dc_field
from pathlib import Path

import numpy as np

from .ff import Field, FieldError, make_field
from .matrix import Matrix, _as_index, rref, split_top, vandermonde

BRUTE_FORCE_LIMIT = 10 ** 7


class CodeError(ValueError):
    pass


class GuardExceeded(RuntimeError):
    """A requested enumeration is larger than its configured guard."""


class InvariantViolation(AssertionError):
    """An internal cross-check between two independent computations failed."""


@dataclass(frozen=True)
class EvalParams:
    field: Field
    n: int
    k: int
    alpha: tuple
    nu: tuple

    def __post_init__(self):
        F = self.field
        alpha = tuple(_as_index(F, a) for a in self.alpha)
        nu = tuple(_as_index(F, v) for v in self.nu) if self.nu else (1,) * len(alpha)
        object.__setattr__(self, "alpha", alpha)
        object.__setattr__(self, "nu", nu)
        if len(alpha) != self.n:
            raise CodeError(f"alpha has {len(alpha)} entries, expected n={self.n}")
        if len(nu) != self.n:
            raise CodeError(f"nu has {len(nu)} entries, expected n={self.n}")
        if not 0 < self.k < self.n:
            raise CodeError(f"need 0 < k < n, got k={self.k}, n={self.n}")
        if self.n > F.q:
            raise CodeError(f"n={self.n} exceeds the field size {F.q}")
        seen = {}
        for i, a in enumerate(alpha):
            if a in seen:
                raise CodeError(f"alpha entries {seen[a]} and {i} are both {F.format(a)}")
            seen[a] = i
        for i, v in enumerate(nu):
            if v == 0:
                raise CodeError(f"nu[{i}] is zero")

    @classmethod
    def make(cls, field, k, alpha, nu=None):
        alpha = tuple(alpha)
        return cls(field, len(alpha), k, alpha, tuple(nu) if nu is not None else ())

    @property
    def r(self):
        return self.n - self.k


@dataclass(frozen=True)
class TwistMatrix:
    """Coefficient matrix B with an optional mask of free (wildcard) cells.

    Cells under the mask are search variables and hold 0 as a placeholder;
    cells outside it are fixed values.  A concrete code has an empty mask.
    """
    entries: Matrix
    mask: tuple = ()

    def __post_init__(self):
        k, r = self.entries.shape
        if not self.mask:
            object.__setattr__(self, "mask", tuple((False,) * r for _ in range(k)))
        if len(self.mask) != k or any(len(row) != r for row in self.mask):
            raise CodeError("mask shape does not match B")
        for i in range(k):
            for j in range(r):
                if self.mask[i][j] and self.entries.data[i][j] != 0:
                    raise CodeError(f"masked cell ({i},{j}) must hold 0")

    @classmethod
    def zero(cls, field, k, r):
        return cls(Matrix.zeros(field, k, r))

    @property
    def free_cells(self):
        """Masked cells in row-major order."""
        return [(i, j) for i, row in enumerate(self.mask) for j, f in enumerate(row) if f]

    def assign(self, values) -> TwistMatrix:
        cells = self.free_cells
        if len(values) != len(cells):
            raise CodeError(f"expected {len(cells)} values for the free cells, got {len(values)}")
        data = [row[:] for row in self.entries.data]
        F = self.entries.field
        for (i, j), v in zip(cells, values):
            data[i][j] = _as_index(F, v)
        return TwistMatrix(Matrix(F, data, self.entries.cols))


@dataclass(frozen=True)
class TgrsCode:
    params: EvalParams
    twist: TwistMatrix

    def __post_init__(self):
        if self.twist.entries.shape != (self.params.k, self.params.r):
            raise CodeError(f"B must be {self.params.k}x{self.params.r}, got {self.twist.entries.shape}")

    @classmethod
    def make(cls, params: EvalParams, B=None):
        if B is None:
            B = Matrix.zeros(params.field, params.k, params.r)
        elif not isinstance(B, Matrix):
            B = Matrix(params.field, B, params.r)
        return cls(params, TwistMatrix(B))

    @property
    def field(self):
        return self.params.field

    @property
    def B(self) -> Matrix:
        return self.twist.entries

    @property
    def n(self):
        return self.params.n

    @property
    def k(self):
        return self.params.k

    def with_nu(self, nu) -> TgrsCode:
        p = self.params
        return TgrsCode(EvalParams(p.field, p.n, p.k, p.alpha, tuple(nu)), self.twist)


def twisted_basis(code: TgrsCode) -> list[list[int]]:
    """Coefficient vectors (degree 0..n-1) of the basis polynomials g_i."""
    n, k = code.n, code.k
    out = []
    for i in range(k):
        g = [0] * n
        g[i] = 1
        for j, b in enumerate(code.B.data[i]):
            g[k + j] = b
        out.append(g)
    return out


def generator(code: TgrsCode, mode: str = "direct") -> Matrix:
    F = code.field
    p = code.params
    if mode == "factored":
        left = Matrix.identity(F, p.k).hstack(code.B)
        return left @ vandermonde(p.alpha, p.n, F) @ Matrix.diag(F, p.nu)
    if mode != "direct":
        raise CodeError(f"unknown generator mode {mode!r}")
    rows = []
    for g in twisted_basis(code):
        rows.append([F.mul(v, _horner(F, g, a)) for a, v in zip(p.alpha, p.nu)])
    return Matrix(F, rows, p.n)


def _horner(F, coeffs, x):
    acc = 0
    for c in reversed(coeffs):
        acc = F.add(F.mul(acc, x), c)
    return acc


def grs_generator(params: EvalParams, k: int | None = None) -> Matrix:
    k = params.k if k is None else k
    F = params.field
    return vandermonde(params.alpha, k, F) @ Matrix.diag(F, params.nu)


def encode(code: TgrsCode, message) -> list[int]:
    msg = [_as_index(code.field, m) for m in message]
    if len(msg) != code.k:
        raise CodeError(f"message length {len(msg)} != k={code.k}")
    return (Matrix(code.field, [msg], code.k) @ generator(code)).data[0]


def min_weight(G: Matrix, limit: int = BRUTE_FORCE_LIMIT) -> int:
    """Minimum Hamming weight over the nonzero vectors of the row space of G.

    G is assumed to have full row rank (every nonzero message gives a
    nonzero word); callers reduce with rref first when unsure.
    """
    F = G.field
    k, n = G.shape
    if F.q ** k > limit:
        raise GuardExceeded(f"q^k = {F.q}^{k} codewords exceeds the guard {limit}")
    tables = F.kernel_tables()
    if tables is None:
        return _min_weight_python(G)
    add, _, mul, _ = tables
    g = np.asarray(G.data, dtype=np.int64)
    q = F.q
    inner_rows = 0
    while inner_rows < k and q ** (inner_rows + 1) <= 200_000:
        inner_rows += 1
    # words spanned by the last `inner_rows` rows, one per row of `block`
    block = np.zeros((1, n), dtype=np.int64)
    for i in range(k - inner_rows, k):
        scaled = mul[np.arange(q)[:, None], g[i][None, :]]
        block = add[block[:, None, :], scaled[None, :, :]].reshape(-1, n)
    best = n + 1
    outer = k - inner_rows
    for idx in range(q ** outer):
        offset = np.zeros(n, dtype=np.int64)
        rest = idx
        for i in range(outer - 1, -1, -1):
            rest, c = divmod(rest, q)
            if c:
                offset = add[offset, mul[c, g[i]]]
        words = add[block, offset[None, :]]
        w = np.count_nonzero(words, axis=1)
        if idx == 0:
            w = w[1:]
        if w.size:
            best = min(best, int(w.min()))
    return best


def _min_weight_python(G: Matrix) -> int:
    F = G.field
    k, n = G.shape
    best = n + 1
    for idx in range(1, F.q ** k):
        word = [0] * n
        rest = idx
        for i in range(k):
            rest, c = divmod(rest, F.q)
            if c:
                word = [F.add(w, F.mul(c, x)) for w, x in zip(word, G.data[i])]
        best = min(best, sum(1 for w in word if w))
    return best


def brute_min_distance(code: TgrsCode, limit: int = BRUTE_FORCE_LIMIT):
    """(d, Singleton defect) by enumerating every nonzero codeword."""
    d = min_weight(generator(code), limit)
    return d, code.n - code.k + 1 - d


def weight_distribution(G: Matrix) -> list[int]:
    F = G.field
    k, n = G.shape
    if F.q ** k > BRUTE_FORCE_LIMIT:
        raise GuardExceeded("weight distribution enumeration too large")
    counts = [0] * (n + 1)
    for idx in range(F.q ** k):
        word = [0] * n
        rest = idx
        for i in range(k):
            rest, c = divmod(rest, F.q)
            if c:
                word = [F.add(w, F.mul(c, x)) for w, x in zip(word, G.data[i])]
        counts[sum(1 for w in word if w)] += 1
    return counts


def apply_equivalence(code_words: Matrix, perm, scale) -> Matrix:
    """Map each row c to (s_1 c_perm[0], ..., s_n c_perm[n-1])."""
    F = code_words.field
    n = code_words.cols
    perm = list(perm)
    if sorted(perm) != list(range(n)):
        raise CodeError("perm is not a permutation of the columns")
    sc = [_as_index(F, s) for s in scale]
    if len(sc) != n:
        raise CodeError("scale length does not match the code length")
    if any(s == 0 for s in sc):
        raise CodeError("scale entries must be nonzero")
    return Matrix(F, [[F.mul(sc[j], row[perm[j]]) for j in range(n)] for row in code_words.data], n)


def row_space_basis(G: Matrix) -> Matrix:
    R, rk, _ = rref(G)
    return Matrix(G.field, R.data[:rk], G.cols)


def code_equal(G1: Matrix, G2: Matrix) -> bool:
    if G1.field != G2.field or G1.cols != G2.cols:
        raise CodeError("codes over different fields or lengths")
    return row_space_basis(G1) == row_space_basis(G2)


# --- code description files ---

_KEY = re.compile(r"^\s*([A-Za-z_][\w-]*)\s*[=:]\s*(.*)$")


@dataclass
class CodeConfig:
    """Parsed code description: parameters plus B with `*` wildcards."""
    params: EvalParams
    twist: TwistMatrix
    extra: dict = dc_field(default_factory=dict)

    @property
    def field(self):
        return self.params.field

    @property
    def wildcards(self):
        return self.twist.free_cells

    def code(self) -> TgrsCode:
        if self.wildcards:
            raise CodeError("B contains wildcards; a concrete code needs every cell fixed")
        return TgrsCode(self.params, self.twist)


def _split_list(text: str) -> list[str]:
    return [t.strip() for t in split_top(text.strip().strip("()"), ",") if t.strip()]


def parse_config(text: str) -> CodeConfig:
    raw: dict[str, str] = {}
    last = None
    for line in text.splitlines():
        line = line.split("#", 1)[0].rstrip()
        if not line.strip():
            continue
        m = _KEY.match(line)
        if m:
            last = m.group(1).lower() if m.group(1) != "B" else "B"
            raw[last] = m.group(2).strip()
        elif last is not None:
            sep = "" if raw[last].endswith(";") or not raw[last] else ";"
            raw[last] = raw[last] + sep + line.strip()
        else:
            raise CodeError(f"cannot parse config line {line!r}")
    try:
        p = int(raw.pop("p"))
        m = int(raw.pop("m", "1"))
    except KeyError as e:
        raise CodeError(f"missing config key {e}") from None
    modulus = raw.pop("modulus", None)
    if modulus is not None:
        modulus = [int(c) for c in _split_list(modulus.strip("[]"))]
    try:
        F = make_field(p, m, modulus)
    except FieldError as e:
        raise CodeError(str(e)) from None
    if "alpha" not in raw or "k" not in raw:
        raise CodeError("config needs at least p, k and alpha")
    alpha = [F.parse(t) for t in _split_list(raw.pop("alpha"))]
    k = int(raw.pop("k"))
    n = int(raw.pop("n", len(alpha)))
    nu_txt = raw.pop("nu", None)
    nu = tuple(F.parse(t) for t in _split_list(nu_txt)) if nu_txt else ()
    params = EvalParams(F, n, k, tuple(alpha), nu)
    b_txt = raw.pop("B", raw.pop("b", None))
    if b_txt is None:
        twist = TwistMatrix.zero(F, k, n - k)
    else:
        twist = parse_twist(F, b_txt, k, n - k)
    return CodeConfig(params, twist, raw)


def parse_twist(F: Field, text: str, k: int, r: int) -> TwistMatrix:
    rows = [row for row in split_top(text.strip(), ";") if row.strip()]
    if len(rows) != k:
        raise CodeError(f"B has {len(rows)} rows, expected k={k}")
    data, mask = [], []
    for i, row in enumerate(rows):
        toks = [t.strip() for t in split_top(row, ",")]
        if len(toks) != r:
            raise CodeError(f"B row {i} has {len(toks)} entries, expected n-k={r}")
        data.append([0 if t == "*" else F.parse(t) for t in toks])
        mask.append(tuple(t == "*" for t in toks))
    return TwistMatrix(Matrix(F, data, r), tuple(mask))


def load_config(path) -> CodeConfig:
    return parse_config(Path(path).read_text())


def format_config(cfg: CodeConfig) -> str:
    F = cfg.field
    p = cfg.params
    lines = [f"p = {F.p}"]
    if F.m > 1:
        lines.append(f"m = {F.m}")
        lines.append("modulus = " + ",".join(str(c) for c in F.modulus))
    lines += [f"n = {p.n}", f"k = {p.k}",
              "alpha = " + ",".join(F.format(a) for a in p.alpha),
              "nu = " + ",".join(F.format(v) for v in p.nu)]
    rows = []
    for i, row in enumerate(cfg.twist.entries.data):
        rows.append(",".join("*" if cfg.twist.mask[i][j] else F.format(x) for j, x in enumerate(row)))
    lines.append("B = " + "; ".join(rows))
    for key, val in cfg.extra.items():
        lines.append(f"{key} = {val}")
    return "\n".join(lines) + "\n"
