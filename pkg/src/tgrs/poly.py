"""Sparse multivariate polynomials over a finite field.

Terms map exponent tuples to nonzero coefficient indices.  Text form is
``c*x0^d0*x1^d1`` terms joined by ``+`` in graded-lex descending order.
"""
from __future__ import annotations

import re

import numpy as np

from .ff import Felt, Field


class PolyError(ValueError):
    pass


def grlex_key(exps):
    return (sum(exps), exps)


class MultiPoly:
    __slots__ = ("field", "nvars", "terms")

    def __init__(self, field: Field, nvars: int, terms=None):
        self.field = field
        self.nvars = nvars
        self.terms = {}
        for exps, c in (terms or {}).items():
            exps = tuple(exps)
            if len(exps) != nvars:
                raise PolyError(f"exponent vector {exps} has wrong arity for {nvars} variables")
            c = c.index if isinstance(c, Felt) else c % field.q if field.m == 1 else c
            if c:
                self.terms[exps] = c

    @classmethod
    def constant(cls, field, nvars, c):
        return cls(field, nvars, {(0,) * nvars: c})

    @classmethod
    def variable(cls, field, nvars, i, coeff=1):
        exps = [0] * nvars
        exps[i] = 1
        return cls(field, nvars, {tuple(exps): coeff})

    def _check(self, other):
        if self.field != other.field or self.nvars != other.nvars:
            raise PolyError("polynomials over different fields or variable counts")

    def __add__(self, other):
        self._check(other)
        F = self.field
        out = dict(self.terms)
        for e, c in other.terms.items():
            v = F.add(out.get(e, 0), c)
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return _raw(F, self.nvars, out)

    def __neg__(self):
        F = self.field
        return _raw(F, self.nvars, {e: F.neg(c) for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, MultiPoly):
            return self.scale(other)
        self._check(other)
        F = self.field
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                v = F.add(out.get(e, 0), F.mul(c1, c2))
                if v:
                    out[e] = v
                else:
                    out.pop(e, None)
        return _raw(F, self.nvars, out)

    def scale(self, c):
        F = self.field
        c = c.index if isinstance(c, Felt) else c
        if c == 0:
            return _raw(F, self.nvars, {})
        return _raw(F, self.nvars, {e: F.mul(c, v) for e, v in self.terms.items()})

    def eval(self, point) -> Felt:
        return Felt(self.field, self.eval_index([p.index if isinstance(p, Felt) else p for p in point]))

    def eval_index(self, point) -> int:
        if len(point) != self.nvars:
            raise PolyError(f"need {self.nvars} values, got {len(point)}")
        F = self.field
        acc = 0
        for e, c in self.terms.items():
            v = c
            for x, d in zip(point, e):
                if d:
                    v = F.mul(v, F.pow(x, d))
            acc = F.add(acc, v)
        return acc

    def is_zero(self):
        return not self.terms

    def degree_in(self, i: int) -> int:
        return max((e[i] for e in self.terms), default=0)

    def max_var_degree(self) -> int:
        return max((max(e) if e else 0 for e in self.terms), default=0)

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda t: grlex_key(t[0]), reverse=True)

    def leading(self):
        return self.sorted_terms()[0] if self.terms else None

    def monic(self):
        """Scale so the leading graded-lex coefficient is 1."""
        if not self.terms:
            return self
        return self.scale(self.field.inv(self.leading()[1]))

    def __eq__(self, other):
        return (isinstance(other, MultiPoly) and self.field == other.field
                and self.nvars == other.nvars and self.terms == other.terms)

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __repr__(self):
        return format_poly(self)


def _raw(field, nvars, terms):
    p = MultiPoly.__new__(MultiPoly)
    p.field, p.nvars, p.terms = field, nvars, terms
    return p


def scalar_multiple(a: MultiPoly, b: MultiPoly):
    """Nonzero c with a == c*b, or None."""
    if a.is_zero() or b.is_zero():
        return None
    if set(a.terms) != set(b.terms):
        return None
    F = a.field
    e0 = next(iter(a.terms))
    c = F.div(a.terms[e0], b.terms[e0])
    return Felt(F, c) if b.scale(c) == a else None


def format_poly(p: MultiPoly, names=None) -> str:
    if not p.terms:
        return "0"
    names = names or [f"x{i}" for i in range(p.nvars)]
    parts = []
    for e, c in p.sorted_terms():
        factors = [p.field.format(c)]
        for name, d in zip(names, e):
            if d == 1:
                factors.append(name)
            elif d > 1:
                factors.append(f"{name}^{d}")
        parts.append("*".join(factors))
    return " + ".join(parts)


def parse_poly(field: Field, nvars: int, text: str, names=None) -> MultiPoly:
    """Parse a sum of terms; implicit coefficients and '**' are accepted."""
    names = names or [f"x{i}" for i in range(nvars)]
    lookup = {nm: i for i, nm in enumerate(names)}
    s = text.replace("**", "^").replace(" ", "")
    s = re.sub(r"(?<=[\d\]])(?=[A-Za-z_])", "*", s)
    s = s.replace("-", "+-")
    out = MultiPoly(field, nvars)
    for term in s.split("+"):
        if not term:
            continue
        neg = term.startswith("-")
        term = term.lstrip("-")
        coeff = 1
        exps = [0] * nvars
        for fac in term.split("*"):
            if fac in lookup or not _looks_like_element(fac, field):
                for i, d in _scan_monomial(fac, names, lookup):
                    exps[i] += d
            else:
                coeff = field.mul(coeff, field.parse(fac))
        if neg:
            coeff = field.neg(coeff)
        out = out + MultiPoly(field, nvars, {tuple(exps): coeff})
    return out


def _looks_like_element(fac, field):
    if re.fullmatch(r"\d+|\[[\d,]*\]", fac):
        return True
    return field.m > 1 and re.fullmatch(r"z(\^\d+)?", fac) is not None


def _scan_monomial(fac, names, lookup):
    """Split juxtaposed variables such as 'xy' or 'x^2y' into (index, degree)."""
    out = []
    pos = 0
    by_len = sorted(names, key=len, reverse=True)
    while pos < len(fac):
        for nm in by_len:
            if fac.startswith(nm, pos):
                pos += len(nm)
                m = re.match(r"\^(\d+)", fac[pos:])
                d = 1
                if m:
                    d = int(m.group(1))
                    pos += m.end()
                out.append((lookup[nm], d))
                break
        else:
            raise PolyError(f"cannot parse factor {fac!r}")
    return out


def count_zeros(P: MultiPoly, limit: int = 10 ** 8) -> int:
    """Number of points of GF(q)^nvars where P vanishes, by full enumeration."""
    F = P.field
    q, nv = F.q, P.nvars
    if q ** nv > limit:
        raise PolyError(f"q^nvars = {q}^{nv} exceeds the guard {limit}")
    if P.is_zero():
        return q ** nv
    if nv == 0:
        return 0
    tables = F.kernel_tables()
    if tables is None:
        return _count_zeros_python(P)
    add, _, mul, _ = tables
    maxd = max(max(e) for e in P.terms)
    powers = np.zeros((q, maxd + 1), dtype=np.int64)
    for x in range(q):
        for d in range(maxd + 1):
            powers[x, d] = F.pow(x, d)
    # chunk over the leading variable to bound memory
    inner = nv - 1
    grid = np.indices((q,) * inner).reshape(inner, -1) if inner else np.zeros((0, 1), dtype=np.int64)
    zeros = 0
    for x0 in range(q):
        acc = np.zeros(grid.shape[1], dtype=np.int64)
        for e, c in P.terms.items():
            v = np.full(grid.shape[1], mul[c, powers[x0, e[0]]], dtype=np.int64)
            for i in range(inner):
                if e[i + 1]:
                    v = mul[v, powers[grid[i], e[i + 1]]]
            acc = add[acc, v]
        zeros += int(np.count_nonzero(acc == 0))
    return zeros


def _count_zeros_python(P: MultiPoly) -> int:
    from itertools import product
    return sum(1 for pt in product(range(P.field.q), repeat=P.nvars) if P.eval_index(pt) == 0)
