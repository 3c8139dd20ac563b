"""Arithmetic in GF(p^k).

Elements are identified with integer codes 0..q-1: the code of
c_0 + c_1 x + ... + c_{k-1} x^{k-1} is sum(c_i p^i).  Code 0 is zero and
code 1 is one.  For k > 1 the field is GF(p)[x] modulo the lexicographically
smallest monic irreducible of degree k (coefficients compared from the
constant term upward); for k = 1 the modulus is x itself, which makes the
reduction a no-op and keeps one code path.

Scalar operations work on codes.  The kernels in `qforest.linalg` use the
dense operation tables exposed here (`add_table`, `mul_table`, ...), which
are built lazily and only for q <= TABLE_MAX_Q.
"""

from __future__ import annotations

import functools
import itertools
import re
from dataclasses import dataclass

import numpy as np

TABLE_MAX_Q = 2048


class FieldError(ValueError):
    pass


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def prime_factors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def factor_prime_power(q: int) -> tuple[int, int]:
    """Return (p, k) with q = p**k, or raise FieldError."""
    if q < 2:
        raise FieldError(f"{q} is not a prime power")
    fs = prime_factors(q)
    if len(fs) != 1:
        raise FieldError(f"{q} is not a prime power")
    p = fs[0]
    k = 0
    while q > 1:
        q //= p
        k += 1
    return p, k


def parse_prime_power(text: str | int) -> tuple[int, int]:
    """Accept a bare integer (auto-factored) or the form "p^k"."""
    if isinstance(text, int):
        return factor_prime_power(text)
    s = text.strip()
    m = re.fullmatch(r"(\d+)\s*\^\s*(\d+)", s)
    if m:
        p, k = int(m.group(1)), int(m.group(2))
        if not is_prime(p):
            raise FieldError(f"{p} is not prime")
        if k < 1:
            raise FieldError("exponent must be positive")
        return p, k
    if not s.isdigit():
        raise FieldError(f"cannot parse prime power {text!r}")
    return factor_prime_power(int(s))


# -- polynomials over GF(p), little-endian coefficient lists -----------------

def _trim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_mod(a, m, p):
    a = _trim(list(a))
    dm = len(m) - 1
    inv_lead = pow(m[-1], -1, p)
    while len(a) - 1 >= dm:
        c = a[-1] * inv_lead % p
        shift = len(a) - 1 - dm
        for i, mc in enumerate(m):
            a[shift + i] = (a[shift + i] - c * mc) % p
        _trim(a)
    return a


def _poly_mul(a, b, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return _trim(out)


def _is_irreducible(f, p) -> bool:
    k = len(f) - 1
    if k <= 1:
        return True
    for d in range(1, k // 2 + 1):
        for low in itertools.product(range(p), repeat=d):
            if not _poly_mod(f, list(low) + [1], p):
                return False
    return True


def smallest_irreducible(p: int, k: int) -> tuple[int, ...]:
    # product() yields tuples in lexicographic order with c_0 most significant
    for low in itertools.product(range(p), repeat=k):
        f = list(low) + [1]
        if k > 1 and low[0] == 0:
            continue
        if _is_irreducible(f, p):
            return tuple(f)
    raise FieldError(f"no irreducible polynomial of degree {k} over GF({p})")


@dataclass(frozen=True)
class FieldCtx:
    p: int
    k: int
    modulus: tuple[int, ...]

    @property
    def q(self) -> int:
        return self.p ** self.k

    def __repr__(self):
        return f"GF({self.q})" if self.k == 1 else f"GF({self.p}^{self.k})"

    def __call__(self, code: int) -> FieldElem:
        return FieldElem(self, code)

    def __getstate__(self):
        # cached tables are rebuilt on demand after unpickling
        return (self.p, self.k, self.modulus)

    def __setstate__(self, state):
        p, k, modulus = state
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "k", k)
        object.__setattr__(self, "modulus", modulus)

    @property
    def zero(self) -> FieldElem:
        return FieldElem(self, 0)

    @property
    def one(self) -> FieldElem:
        return FieldElem(self, 1)

    def elements(self) -> list[FieldElem]:
        return [FieldElem(self, c) for c in range(self.q)]

    def digits(self, code: int) -> list[int]:
        out = []
        for _ in range(self.k):
            code, d = divmod(code, self.p)
            out.append(d)
        return out

    def code_of(self, digits) -> int:
        c = 0
        for d in reversed(list(digits)):
            c = c * self.p + d % self.p
        return c

    def _check(self, a: int):
        if not 0 <= a < self.q:
            raise FieldError(f"code {a} out of range for {self!r}")

    # -- reference arithmetic (no tables) ------------------------------------

    def poly_mul(self, a: int, b: int) -> int:
        prod = _poly_mul(_trim(self.digits(a)), _trim(self.digits(b)), self.p)
        return self.code_of(_poly_mod(prod, self.modulus, self.p) if prod else [])

    def poly_add(self, a: int, b: int) -> int:
        da, db = self.digits(a), self.digits(b)
        return self.code_of([(x + y) % self.p for x, y in zip(da, db)])

    # -- scalar ops on codes -------------------------------------------------

    @property
    def has_tables(self) -> bool:
        return self.q <= TABLE_MAX_Q

    def add(self, a: int, b: int) -> int:
        if self.k == 1:
            return (a + b) % self.p
        return int(self.add_table[a, b]) if self.has_tables else self.poly_add(a, b)

    def neg(self, a: int) -> int:
        if self.k == 1:
            return -a % self.p
        return self.code_of([-d for d in self.digits(a)])

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if self.k == 1:
            return a * b % self.p
        return int(self.mul_table[a, b]) if self.has_tables else self.poly_mul(a, b)

    def pow(self, a: int, e: int) -> int:
        if e < 0:
            raise FieldError("negative exponent; use inv")
        result, base = 1, a
        while e:
            if e & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            e >>= 1
        return result

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError(f"inverse of zero in {self!r}")
        if self.k == 1:
            return pow(a, -1, self.p)
        return self.pow(a, self.q - 2)

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def is_square(self, a: int) -> bool:
        if a == 0 or self.p == 2:
            return True
        return self.pow(a, (self.q - 1) // 2) == 1

    # -- dense tables for vectorised kernels ---------------------------------

    def _require_tables(self):
        if not self.has_tables:
            raise FieldError(f"{self!r} is too large for table arithmetic (q > {TABLE_MAX_Q})")

    @functools.cached_property
    def digit_array(self) -> np.ndarray:
        codes = np.arange(self.q, dtype=np.int64)
        return np.stack([(codes // self.p ** i) % self.p for i in range(self.k)], axis=1)

    @functools.cached_property
    def add_table(self) -> np.ndarray:
        self._require_tables()
        d = self.digit_array
        s = (d[:, None, :] + d[None, :, :]) % self.p
        weights = self.p ** np.arange(self.k, dtype=np.int64)
        return (s @ weights).astype(np.int64)

    @functools.cached_property
    def neg_table(self) -> np.ndarray:
        d = (-self.digit_array) % self.p
        return (d @ (self.p ** np.arange(self.k, dtype=np.int64))).astype(np.int64)

    @functools.cached_property
    def sub_table(self) -> np.ndarray:
        return self.add_table[:, self.neg_table]

    @functools.cached_property
    def generator(self) -> int:
        """Smallest code generating the multiplicative group."""
        if self.q == 2:
            return 1
        n = self.q - 1
        exps = [n // r for r in prime_factors(n)]
        for g in range(2, self.q):
            if all(self._ref_pow(g, e) != 1 for e in exps):
                return g
        raise FieldError("no generator found")  # unreachable for a field

    def _ref_pow(self, a, e):
        result, base = 1, a
        while e:
            if e & 1:
                result = self.poly_mul(result, base)
            base = self.poly_mul(base, base)
            e >>= 1
        return result

    @functools.cached_property
    def _exp_log(self):
        n = self.q - 1
        exp = np.zeros(n, dtype=np.int64)
        log = np.zeros(self.q, dtype=np.int64)
        x = 1
        g = self.generator
        for i in range(n):
            exp[i] = x
            log[x] = i
            x = self.poly_mul(x, g)
        return exp, log

    @functools.cached_property
    def mul_table(self) -> np.ndarray:
        self._require_tables()
        exp, log = self._exp_log
        n = self.q - 1
        t = exp[(log[:, None] + log[None, :]) % n]
        t[0, :] = 0
        t[:, 0] = 0
        return t

    @functools.cached_property
    def inv_table(self) -> np.ndarray:
        """inv_table[0] is 0 by convention so kernels can index blindly."""
        exp, log = self._exp_log
        t = exp[(-log) % (self.q - 1)]
        t[0] = 0
        return t


class FieldElem:
    __slots__ = ("ctx", "code")

    def __init__(self, ctx: FieldCtx, code: int):
        code = int(code)
        ctx._check(code)
        self.ctx = ctx
        self.code = code

    @property
    def coeffs(self) -> list[int]:
        return self.ctx.digits(self.code)

    def _other(self, other) -> int:
        if not isinstance(other, FieldElem):
            return NotImplemented
        if other.ctx != self.ctx:
            raise FieldError(f"mixing {self.ctx!r} and {other.ctx!r}")
        return other.code

    def __add__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return b
        return FieldElem(self.ctx, self.ctx.add(self.code, b))

    def __sub__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return b
        return FieldElem(self.ctx, self.ctx.sub(self.code, b))

    def __mul__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return b
        return FieldElem(self.ctx, self.ctx.mul(self.code, b))

    def __truediv__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return b
        return FieldElem(self.ctx, self.ctx.div(self.code, b))

    def __neg__(self):
        return FieldElem(self.ctx, self.ctx.neg(self.code))

    def __pow__(self, e: int):
        return FieldElem(self.ctx, self.ctx.pow(self.code, e))

    def inv(self) -> FieldElem:
        return FieldElem(self.ctx, self.ctx.inv(self.code))

    def __eq__(self, other):
        if isinstance(other, FieldElem):
            return self.ctx == other.ctx and self.code == other.code
        return NotImplemented

    def __hash__(self):
        return hash((self.ctx.p, self.ctx.k, self.code))

    def __bool__(self):
        return self.code != 0

    def __int__(self):
        return self.code

    def __repr__(self):
        return f"{self.ctx!r}({self.code})"


def arith(a: FieldElem, b: FieldElem | int | None, op: str) -> FieldElem:
    """Dispatch one of add, sub, mul, div, pow, inv, neg by name."""
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    if op == "pow":
        return a ** int(b)
    if op == "inv":
        return a.inv()
    if op == "neg":
        return -a
    raise ValueError(f"unknown operation {op!r}")


@functools.lru_cache(maxsize=None)
def make_field(p: int, k: int = 1) -> FieldCtx:
    if not isinstance(p, int) or not is_prime(p):
        raise FieldError(f"{p} is not prime")
    if k < 1:
        raise FieldError("extension degree must be at least 1")
    if k > 1 and p ** k > 2 ** 62:
        raise FieldError(f"{p}^{k} exceeds the supported field size")
    return FieldCtx(p, k, smallest_irreducible(p, k))


def field_of_order(q: int | str) -> FieldCtx:
    return make_field(*parse_prime_power(q))


def enumerate_elements(ctx: FieldCtx) -> list[FieldElem]:
    return ctx.elements()


def find_nonsquare(ctx: FieldCtx) -> FieldElem:
    """Smallest-code nonsquare; only exists in odd characteristic."""
    if ctx.p == 2:
        raise FieldError("every element is a square in characteristic 2")
    squares = {ctx.mul(a, a) for a in range(ctx.q)}
    for c in range(ctx.q):
        if c not in squares:
            return FieldElem(ctx, c)
    raise FieldError("no nonsquare found")  # unreachable


def prime_powers(lo: int, hi: int) -> list[int]:
    return [q for q in range(max(lo, 2), hi + 1) if len(prime_factors(q)) == 1]
