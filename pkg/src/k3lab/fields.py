"""Finite fields F_q, q = p^k, with table-driven vectorized arithmetic.

An element of F_q = F_p[t]/(m) is encoded as the integer ``sum a_i p^i``
where ``a_0 + a_1 t + ... + a_{k-1} t^{k-1}`` is its reduced representative.
The prime field sits inside as ``0..p-1``.  Multiplication goes through
discrete log/exp tables; addition is digit-wise modulo p.
"""

from __future__ import annotations

from functools import lru_cache
from math import isqrt

import numpy as np
from sympy import factorint, isprime
from sympy.polys.domains import ZZ
from sympy.polys.galoistools import gf_irreducible_p

from .poly import MultiPoly

__all__ = ["FieldError", "FqContext", "ProjPoint", "smallest_irreducible"]

MAX_Q = 3**12
_ADD_TABLE_LIMIT = 1024


class FieldError(ValueError):
    pass


def smallest_irreducible(p: int, k: int) -> tuple[int, ...]:
    """Lexicographically smallest monic irreducible of degree k, high coefficient first.

    Candidates ``t^k + c_{k-1} t^{k-1} + ... + c_0`` are tried in increasing
    order of ``sum c_i p^i``.
    """
    for code in range(p**k):
        low = [(code // p**i) % p for i in range(k)]  # c_0 .. c_{k-1}
        f = [1] + low[::-1]
        if k == 1 or (low[0] != 0 and gf_irreducible_p(f, p, ZZ)):
            return tuple(f)
    raise FieldError(f"no irreducible polynomial of degree {k} over F_{p}")


def _pmul(a, b, mod, p):
    """Product of digit lists (low first) reduced modulo the monic ``mod`` (high first)."""
    k = len(mod) - 1
    prod = [0] * (2 * k - 1 if k else 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                prod[i + j] = (prod[i + j] + x * y) % p
    for d in range(len(prod) - 1, k - 1, -1):
        c = prod[d]
        if c:
            # t^d = t^(d-k) * t^k and t^k = -(mod[1] t^(k-1) + ... + mod[k])
            for i in range(1, k + 1):
                prod[d - i] = (prod[d - i] - c * mod[i]) % p
            prod[d] = 0
    return prod[:k]


class FqContext:
    """The field F_{p^k} with log/exp, character and inverse tables."""

    def __init__(self, p: int, k: int = 1):
        if not isprime(p):
            raise FieldError(f"{p} is not prime")
        if not 1 <= k <= 12:
            raise FieldError("extension degree must be between 1 and 12")
        q = p**k
        if q > MAX_Q:
            raise FieldError(f"field size {q} exceeds the desk-scale cap {MAX_Q}")
        self.p, self.k, self.q = p, k, q
        self.modulus = smallest_irreducible(p, k)
        if k > 1 and not gf_irreducible_p(list(self.modulus), p, ZZ):
            raise FieldError("modulus is reducible")
        self._pw = p ** np.arange(k, dtype=np.int64)
        self.generator = self._find_generator()
        self._build_tables()

    def __repr__(self):
        return f"FqContext(p={self.p}, k={self.k})"

    def __eq__(self, other):
        return isinstance(other, FqContext) and (self.p, self.k) == (other.p, other.k)

    def __hash__(self):
        return hash((self.p, self.k))

    # -- scalar digit arithmetic, used only while building tables --------------

    def _digits(self, a: int) -> list[int]:
        return [(a // self.p**i) % self.p for i in range(self.k)]

    def _encode(self, digits) -> int:
        return sum(int(d) * self.p**i for i, d in enumerate(digits))

    def _smul(self, a: int, b: int) -> int:
        if self.k == 1:
            return a * b % self.p
        return self._encode(_pmul(self._digits(a), self._digits(b), self.modulus, self.p))

    def _spow(self, a: int, e: int) -> int:
        r = 1
        while e:
            if e & 1:
                r = self._smul(r, a)
            a = self._smul(a, a)
            e >>= 1
        return r

    def _find_generator(self) -> int:
        n = self.q - 1
        if n == 1:
            return 1
        primes = list(factorint(n))
        for g in range(2, self.q):
            if all(self._spow(g, n // ell) != 1 for ell in primes):
                return g
        raise FieldError("no primitive element found")

    def _mul_matrix(self, a: int) -> np.ndarray:
        cols = [self._digits(self._smul(a, self.p**j)) for j in range(self.k)]
        return np.array(cols, dtype=np.int64).T

    def _build_tables(self):
        p, q, k = self.p, self.q, self.k
        n = q - 1
        rows = np.zeros((n, k), dtype=np.int64)
        rows[0, 0] = 1
        B = isqrt(n) + 1
        M = self._mul_matrix(self.generator)
        for i in range(1, min(B, n)):
            rows[i] = (M @ rows[i - 1]) % p
        MB = self._mul_matrix(self._spow(self.generator, B)).T
        i = B
        while i < n:
            m = min(B, n - i)
            rows[i:i + m] = (rows[i - B:i - B + m] @ MB) % p
            i += m
        exp = rows @ self._pw
        if len(set(exp.tolist())) != n or 0 in set(exp.tolist()):
            raise FieldError("generator tables are not a bijection")
        self.exp = np.concatenate([exp, exp]).astype(np.int64)
        self.log = np.zeros(q, dtype=np.int64)
        self.log[exp] = np.arange(n, dtype=np.int64)
        chi = np.zeros(q, dtype=np.int64)
        if p == 2:
            chi[1:] = 1
        else:
            chi[exp] = np.where(np.arange(n) % 2 == 0, 1, -1)
        self.chi = chi
        digits = (np.arange(q)[:, None] // self._pw) % p
        self.neg_table = ((-digits) % p) @ self._pw
        if k > 1 and q <= _ADD_TABLE_LIMIT:
            d = (digits[:, None, :] + digits[None, :, :]) % p
            self.add_table = d @ self._pw
        else:
            self.add_table = None

    # -- vectorized arithmetic ---------------------------------------------------

    def elements(self) -> np.ndarray:
        return np.arange(self.q, dtype=np.int64)

    def from_int(self, c):
        """Image of an integer (or integer array) in the prime field."""
        return np.mod(c, self.p)

    def add(self, a, b):
        if self.k == 1:
            return (np.asarray(a) + b) % self.p
        if self.add_table is not None:
            return self.add_table[a, b]
        a, b = np.asarray(a), np.asarray(b)
        p, out = self.p, 0
        for w in self._pw:
            out = out + ((a // w + b // w) % p) * w
        return out

    def neg(self, a):
        return self.neg_table[a]

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        a, b = np.asarray(a), np.asarray(b)
        if self.k == 1:
            return a * b % self.p
        r = self.exp[self.log[a] + self.log[b]]
        return np.where((a == 0) | (b == 0), 0, r)

    def inv(self, a):
        a = np.asarray(a)
        if np.any(a == 0):
            raise ZeroDivisionError("inverse of zero in F_q")
        return self.exp[(self.q - 1 - self.log[a]) % (self.q - 1)]

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def power(self, a, e: int):
        a = np.asarray(a)
        if e == 0:
            return np.ones_like(a)
        r = self.exp[(self.log[a] * e) % (self.q - 1)]
        return np.where(a == 0, 0, r)

    def is_square(self, a):
        return self.chi[a] >= 0

    def sqrt(self, a):
        """A square root of each square; undefined entries for non-squares."""
        a = np.asarray(a)
        if self.p == 2:
            # Frobenius is bijective: sqrt(a) = a^(q/2)
            return self.power(a, self.q // 2)
        r = self.exp[self.log[a] // 2]
        return np.where(a == 0, 0, r)

    def sum(self, vals, axis=-1):
        """Field sum along an axis (digit-wise sums modulo p)."""
        vals = np.asarray(vals)
        if self.k == 1:
            return vals.sum(axis=axis) % self.p
        out = 0
        for w in self._pw:
            out = out + (((vals // w) % self.p).sum(axis=axis) % self.p) * w
        return out

    # -- polynomials -------------------------------------------------------------

    def _compiled(self, F: MultiPoly):
        return _compile(F, self.p, self.q, self.k)

    def eval_poly(self, F: MultiPoly, pts) -> np.ndarray:
        """Values of F at the rows of ``pts`` (an ``N x nvars`` array of field elements)."""
        pts = np.asarray(pts, dtype=np.int64)
        if pts.ndim == 1:
            pts = pts[None, :]
        E, clog = self._compiled(F)
        N = pts.shape[0]
        if E.shape[0] == 0:
            return np.zeros(N, dtype=np.int64)
        L = self.log[pts]
        used = (E > 0).astype(np.int64)
        vanish = ((pts == 0).astype(np.int64) @ used.T) > 0
        tl = (L @ E.T + clog) % (self.q - 1)
        vals = self.exp[tl]
        vals[vanish] = 0
        return self.sum(vals, axis=1)

    def chi_of(self, a):
        return self.chi[a]

    def normalize(self, pts) -> np.ndarray:
        """Scale each row so its first nonzero coordinate is 1."""
        pts = np.atleast_2d(np.asarray(pts, dtype=np.int64))
        nz = pts != 0
        if not nz.any(axis=1).all():
            raise FieldError("the zero vector is not a projective point")
        first = pts[np.arange(len(pts)), nz.argmax(axis=1)]
        return self.mul(pts, self.inv(first)[:, None])


@lru_cache(maxsize=256)
def _compile(F: MultiPoly, p: int, q: int, k: int):
    exps, logs = [], []
    ctx_log = _prime_logs(p, k)
    for e, c in F.terms.items():
        c %= p
        if c:
            exps.append(e)
            logs.append(ctx_log[c])
    n = F.ring.nvars
    E = np.array(exps, dtype=np.int64).reshape(len(exps), n)
    return E, np.array(logs, dtype=np.int64)


@lru_cache(maxsize=64)
def _prime_logs(p: int, k: int):
    ctx = _context(p, k)
    return {c: int(ctx.log[c]) for c in range(1, p)}


@lru_cache(maxsize=64)
def _context(p: int, k: int) -> FqContext:
    return FqContext(p, k)


class ProjPoint(tuple):
    """Homogeneous coordinates over F_q with first nonzero coordinate 1."""

    def __new__(cls, coords, ctx: FqContext | None = None):
        coords = [int(c) for c in coords]
        if ctx is not None:
            coords = [int(c) for c in ctx.normalize(np.array(coords))[0]]
        if not any(coords):
            raise FieldError("the zero vector is not a projective point")
        first = next(c for c in coords if c)
        if first != 1:
            raise FieldError(f"{tuple(coords)} is not normalized")
        return super().__new__(cls, coords)
