"""Exact arithmetic in GF(p) and GF(p^m).

Elements are packed as integer indices: the coefficient vector of the
representative polynomial written in base p, constant term least
significant.  All hot code works on those indices through the ``Field``
methods; ``Felt`` is the user-facing value type wrapping one index.
"""
from __future__ import annotations

import itertools
import re
from functools import lru_cache

import numpy as np

LOG_TABLE_LIMIT = 1 << 16
ADD_TABLE_LIMIT = 256
KERNEL_TABLE_LIMIT = 1024


class FieldError(ValueError):
    pass


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def prime_factors(n: int) -> list[int]:
    out = []
    f = 2
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1
    if n > 1:
        out.append(n)
    return out


# --- polynomials over GF(p) as coefficient lists, constant term first ---

def _ptrim(a):
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return a


def _pmod(a, f, p):
    a = _ptrim(a)
    df = len(f) - 1
    inv_lead = pow(f[-1], p - 2, p)
    while len(a) - 1 >= df:
        c = a[-1] * inv_lead % p
        shift = len(a) - 1 - df
        for i, fc in enumerate(f):
            a[shift + i] = (a[shift + i] - c * fc) % p
        a = _ptrim(a)
    return a


def _pmul(a, b, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return out


def _ppowmod(base, e, f, p):
    result = [1]
    base = _pmod(base, f, p)
    while e:
        if e & 1:
            result = _pmod(_pmul(result, base, p), f, p)
        base = _pmod(_pmul(base, base, p), f, p)
        e >>= 1
    return result


def _pgcd(a, b, p):
    a, b = _ptrim(a), _ptrim(b)
    while b:
        a, b = b, _pmod(a, b, p)
    return a


def is_irreducible(f, p: int) -> bool:
    """Rabin-style test: gcd(x^(p^i) - x, f) = 1 for i <= m/2."""
    f = _ptrim(f)
    m = len(f) - 1
    if m < 1:
        return False
    if m == 1:
        return True
    if f[0] == 0:
        return False
    xp = [0, 1]
    for _ in range(m // 2):
        xp = _ppowmod(xp, p, f, p)
        diff = list(xp) + [0] * max(0, 2 - len(xp))
        diff[1] = (diff[1] - 1) % p
        if len(_pgcd(f, diff, p)) > 1:
            return False
    return True


def _x_order_is_full(f, p: int) -> bool:
    m = len(f) - 1
    q1 = p ** m - 1
    if _ppowmod([0, 1], q1, f, p) != [1]:
        return False
    return all(_ppowmod([0, 1], q1 // r, f, p) != [1] for r in prime_factors(q1))


def is_primitive(f, p: int) -> bool:
    return is_irreducible(f, p) and _x_order_is_full(_ptrim(f), p)


@lru_cache(maxsize=None)
def default_modulus(p: int, m: int) -> tuple[int, ...]:
    """Lexicographically smallest monic primitive polynomial of degree m.

    Candidates are ordered by their lower coefficients (c0, ..., c_{m-1})
    read from the constant term upward.
    """
    for low in itertools.product(range(p), repeat=m):
        f = list(low) + [1]
        if is_primitive(f, p):
            return tuple(f)
    raise FieldError(f"no primitive polynomial of degree {m} over GF({p})")


class Field:
    """GF(p^m) with a fixed modulus; operations take and return indices."""

    def __init__(self, p: int, m: int = 1, modulus=None):
        self.p = p
        self.m = m
        self.q = p ** m
        self.modulus = tuple(modulus) if modulus is not None else None
        self.order = self.q
        self._gen = None
        self._exp = None
        self._log = None
        self._add = None
        self._neg = None
        self._kernel_tables = None
        if m > 1:
            self._build_extension()

    # -- construction helpers --

    def _build_extension(self):
        p, q = self.p, self.q
        if self.q <= LOG_TABLE_LIMIT:
            gen = self._find_generator()
            self._gen = gen
            exp = [0] * (2 * (q - 1))
            log = [0] * q
            gvec = self.to_vector(gen)
            cur = [1]
            for i in range(q - 1):
                idx = self._from_poly(cur)
                exp[i] = idx
                log[idx] = i
                cur = _pmod(_pmul(cur, gvec, p), list(self.modulus), p)
            exp[q - 1:] = exp[:q - 1]
            self._exp = exp
            self._log = log
            self._neg = [self._neg_digits(a) for a in range(q)]
            if q <= ADD_TABLE_LIMIT:
                self._add = [[self._add_digits(a, b) for b in range(q)] for a in range(q)]

    def _find_generator(self):
        if self.modulus == default_modulus(self.p, self.m):
            return self.p
        return self._smallest_generator()

    def _smallest_generator(self):
        q1 = self.q - 1
        facs = prime_factors(q1)
        for g in range(1, self.q):
            if self.m == 1:
                if all(pow(g, q1 // r, self.p) != 1 for r in facs):
                    return g
                continue
            v = self.to_vector(g)
            if all(_ppowmod(v, q1 // r, list(self.modulus), self.p) != [1] for r in facs):
                return g
        return 1

    # -- encode / decode --

    def to_vector(self, a: int) -> list[int]:
        out = []
        for _ in range(self.m):
            a, r = divmod(a, self.p)
            out.append(r)
        return out

    def from_vector(self, coeffs) -> int:
        if len(coeffs) > self.m:
            raise FieldError(f"coefficient vector longer than degree {self.m}")
        idx = 0
        for c in reversed(list(coeffs)):
            idx = idx * self.p + (c % self.p)
        return idx

    def _from_poly(self, poly) -> int:
        return self.from_vector(list(poly) + [0] * (self.m - len(poly)))

    def _add_digits(self, a, b):
        p, out, place = self.p, 0, 1
        for _ in range(self.m):
            a, x = divmod(a, p)
            b, y = divmod(b, p)
            out += ((x + y) % p) * place
            place *= p
        return out

    def _neg_digits(self, a):
        p, out, place = self.p, 0, 1
        for _ in range(self.m):
            a, x = divmod(a, p)
            out += ((p - x) % p) * place
            place *= p
        return out

    # -- arithmetic on indices --

    def add(self, a: int, b: int) -> int:
        if self.m == 1:
            return (a + b) % self.p
        if self._add is not None:
            return self._add[a][b]
        return self._add_digits(a, b)

    def neg(self, a: int) -> int:
        if self.m == 1:
            return (-a) % self.p
        if self._neg is not None:
            return self._neg[a]
        return self._neg_digits(a)

    def sub(self, a: int, b: int) -> int:
        if self.m == 1:
            return (a - b) % self.p
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if self.m == 1:
            return a * b % self.p
        if a == 0 or b == 0:
            return 0
        if self._log is not None:
            return self._exp[self._log[a] + self._log[b]]
        prod = _pmod(_pmul(self.to_vector(a), self.to_vector(b), self.p), list(self.modulus), self.p)
        return self._from_poly(prod)

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero in GF(%d)" % self.q)
        if self.m == 1:
            return pow(a, self.p - 2, self.p)
        if self._log is not None:
            return self._exp[(self.q - 1 - self._log[a]) % (self.q - 1)]
        return self.pow(a, self.q - 2)

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, e: int) -> int:
        if e < 0:
            a, e = self.inv(a), -e
        if e == 0:
            return 1
        if a == 0:
            return 0
        if self.m == 1:
            return pow(a, e, self.p)
        if self._log is not None:
            return self._exp[self._log[a] * e % (self.q - 1)]
        result, base = 1, a
        while e:
            if e & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            e >>= 1
        return result

    def log(self, a: int) -> int:
        """Discrete log to the base ``primitive_root``."""
        if a == 0:
            raise FieldError("log of zero")
        if self._log is not None:
            return self._log[a]
        g = self.primitive_index()
        cur = 1
        for k in range(self.q - 1):
            if cur == a:
                return k
            cur = self.mul(cur, g)
        raise FieldError("element not in the group generated by the primitive root")

    def order_of(self, a: int) -> int:
        if a == 0:
            raise FieldError("zero has no multiplicative order")
        q1 = self.q - 1
        order = q1
        for r in prime_factors(q1):
            while order % r == 0 and self.pow(a, order // r) == 1:
                order //= r
        return order

    def primitive_index(self) -> int:
        if self._gen is None:
            if self.q == 2:
                self._gen = 1
            else:
                self._gen = self._smallest_generator()
        return self._gen

    # -- convenience --

    def __call__(self, value) -> Felt:
        if isinstance(value, Felt):
            self._check(value)
            return value
        if isinstance(value, str):
            return Felt(self, self.parse(value))
        if isinstance(value, (list, tuple)):
            return Felt(self, self.from_vector(value))
        return Felt(self, self.from_int(int(value)))

    def _check(self, a: Felt):
        if a.field != self:
            raise FieldError("mixed fields")

    def from_int(self, v: int) -> int:
        """Image of an integer: v mod p for extensions, v mod p for primes."""
        return v % self.p

    def zero(self) -> Felt:
        return Felt(self, 0)

    def one(self) -> Felt:
        return Felt(self, 1)

    def elements(self):
        return [Felt(self, i) for i in range(self.q)]

    def parse(self, token: str) -> int:
        tok = token.strip().replace(" ", "")
        if not tok:
            raise FieldError("empty element token")
        if self.m == 1:
            if not re.fullmatch(r"[+-]?\d+", tok):
                raise FieldError(f"bad element {token!r} for GF({self.p})")
            return int(tok) % self.p
        if tok.startswith("[") and tok.endswith("]"):
            coeffs = [int(c) for c in tok[1:-1].split(",") if c]
            if any(c < 0 or c >= self.p for c in coeffs):
                raise FieldError(f"coefficient out of range in {token!r}")
            return self.from_vector(coeffs)
        mt = re.fullmatch(r"z(?:\^(\d+))?", tok)
        if mt:
            k = int(mt.group(1)) if mt.group(1) is not None else 1
            return self.pow(self.primitive_index(), k)
        if re.fullmatch(r"\d+", tok):
            v = int(tok)
            if v >= self.p:
                raise FieldError(f"integer {v} is not in the prime subfield GF({self.p})")
            return v
        raise FieldError(f"bad element {token!r} for GF({self.q})")

    def format(self, a: int) -> str:
        if self.m == 1:
            return str(a)
        if a == 0:
            return "0"
        if self._log is None:
            return "[" + ",".join(str(c) for c in self.to_vector(a)) + "]"
        return f"z^{self.log(a)}"

    def kernel_tables(self):
        """Dense numpy add/sub/mul/inv tables for compiled kernels (q <= 1024)."""
        if self.q > KERNEL_TABLE_LIMIT:
            return None
        if self._kernel_tables is None:
            q = self.q
            add = np.empty((q, q), dtype=np.int32)
            sub = np.empty((q, q), dtype=np.int32)
            mul = np.empty((q, q), dtype=np.int32)
            inv = np.zeros(q, dtype=np.int32)
            for a in range(q):
                for b in range(q):
                    add[a, b] = self.add(a, b)
                    sub[a, b] = self.sub(a, b)
                    mul[a, b] = self.mul(a, b)
                if a:
                    inv[a] = self.inv(a)
            self._kernel_tables = (add, sub, mul, inv)
        return self._kernel_tables

    def __eq__(self, other):
        return (isinstance(other, Field) and self.p == other.p and self.m == other.m
                and self.modulus == other.modulus)

    def __hash__(self):
        return hash((self.p, self.m, self.modulus))

    def __repr__(self):
        if self.m == 1:
            return f"GF({self.p})"
        return f"GF({self.p}^{self.m}, modulus={list(self.modulus)})"


class Felt:
    __slots__ = ("field", "index")

    def __init__(self, field: Field, index: int):
        if not 0 <= index < field.q:
            raise FieldError(f"index {index} out of range for {field!r}")
        self.field = field
        self.index = index

    def _other(self, b):
        if isinstance(b, Felt):
            if b.field is not self.field and b.field != self.field:
                raise FieldError("arithmetic on elements of different fields")
            return b.index
        if isinstance(b, int):
            return self.field.from_int(b)
        return NotImplemented

    def __add__(self, b):
        o = self._other(b)
        return NotImplemented if o is NotImplemented else Felt(self.field, self.field.add(self.index, o))

    __radd__ = __add__

    def __sub__(self, b):
        o = self._other(b)
        return NotImplemented if o is NotImplemented else Felt(self.field, self.field.sub(self.index, o))

    def __rsub__(self, b):
        o = self._other(b)
        return NotImplemented if o is NotImplemented else Felt(self.field, self.field.sub(o, self.index))

    def __mul__(self, b):
        o = self._other(b)
        return NotImplemented if o is NotImplemented else Felt(self.field, self.field.mul(self.index, o))

    __rmul__ = __mul__

    def __truediv__(self, b):
        o = self._other(b)
        return NotImplemented if o is NotImplemented else Felt(self.field, self.field.div(self.index, o))

    def __rtruediv__(self, b):
        o = self._other(b)
        return NotImplemented if o is NotImplemented else Felt(self.field, self.field.div(o, self.index))

    def __neg__(self):
        return Felt(self.field, self.field.neg(self.index))

    def __pow__(self, e: int):
        return Felt(self.field, self.field.pow(self.index, e))

    def inv(self) -> Felt:
        return Felt(self.field, self.field.inv(self.index))

    def __eq__(self, b):
        if isinstance(b, Felt):
            return self.field == b.field and self.index == b.index
        if isinstance(b, int):
            return self.index == self.field.from_int(b)
        return NotImplemented

    def __hash__(self):
        return hash((self.field, self.index))

    def __bool__(self):
        return self.index != 0

    def __int__(self):
        return self.index

    def __repr__(self):
        return self.field.format(self.index)


@lru_cache(maxsize=None)
def _cached_field(p, m, modulus):
    return Field(p, m, modulus)


def make_field(p: int, m: int = 1, modulus=None) -> Field:
    """Build GF(p^m).

    With ``modulus`` omitted and m > 1 the lexicographically smallest monic
    primitive polynomial is used, so the class of x is the primitive root.
    """
    if m < 1:
        raise FieldError("extension degree must be >= 1")
    if not is_prime(p):
        raise FieldError(f"{p} is not prime")
    if m == 1:
        return _cached_field(p, 1, None)
    if modulus is None:
        modulus = default_modulus(p, m)
    else:
        modulus = tuple(int(c) % p for c in modulus)
        if len(_ptrim(modulus)) != m + 1 or modulus[-1] != 1:
            raise FieldError(f"modulus must be monic of degree {m}")
        if not is_irreducible(list(modulus), p):
            raise FieldError(f"modulus {list(modulus)} is reducible over GF({p})")
    return _cached_field(p, m, tuple(modulus))


def primitive_root(field: Field) -> Felt:
    return Felt(field, field.primitive_index())
