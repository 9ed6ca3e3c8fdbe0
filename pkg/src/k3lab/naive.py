"""Slow reference implementations used to cross-check the vectorized code.

Nothing here shares code with :mod:`k3lab.fields` or :mod:`k3lab.geometry`:
the field is built from its own modulus search and plain Python loops, and
points are enumerated with ``itertools.product``.
"""

from __future__ import annotations

from itertools import product

from .poly import MultiPoly

__all__ = ["NaiveField", "naive_projective_points", "naive_count_hypersurface",
           "naive_count_double_cover", "naive_d_list", "naive_pell_solutions"]


def _poly_mod(a: list[int], m: list[int], p: int) -> list[int]:
    """Remainder of a by the monic m; both low-degree-first coefficient lists."""
    a = a[:]
    dm = len(m) - 1
    for d in range(len(a) - 1, dm - 1, -1):
        c = a[d] % p
        if c:
            for i in range(dm + 1):
                a[d - dm + i] = (a[d - dm + i] - c * m[i]) % p
    return [x % p for x in a[:dm]] + [0] * max(0, dm - len(a))


def _has_factor(m: list[int], p: int) -> bool:
    k = len(m) - 1
    for d in range(1, k // 2 + 1):
        for low in product(range(p), repeat=d):
            g = list(low) + [1]
            if not any(_poly_mod(m, g, p)):
                return True
    return False


class NaiveField:
    """F_{p^k} as residues of F_p[t] modulo the first irreducible found by trial division.

    Elements are integers ``0..q-1`` read as base-p digit strings, low digit
    first; the tables are built with schoolbook polynomial arithmetic.
    """

    def __init__(self, p: int, k: int = 1):
        self.p, self.k, self.q = p, k, p**k
        if k == 1:
            self.m = [0, 1]
        else:
            for low in product(range(p), repeat=k):
                cand = list(low[::-1]) + [1]
                if cand[0] and not _has_factor(cand, p):
                    self.m = cand
                    break
        q = self.q
        digits = [[(a // p**i) % p for i in range(k)] for a in range(q)]
        enc = lambda ds: sum(d * p**i for i, d in enumerate(ds))
        self.addt = [[enc([(x + y) % p for x, y in zip(digits[a], digits[b])]) for b in range(q)]
                     for a in range(q)]
        self.mult = [[0] * q for _ in range(q)]
        for a in range(q):
            for b in range(a, q):
                prod = [0] * (2 * k)
                for i, x in enumerate(digits[a]):
                    for j, y in enumerate(digits[b]):
                        prod[i + j] += x * y
                r = enc(_poly_mod(prod, self.m, p)) if k > 1 else (a * b) % p
                self.mult[a][b] = self.mult[b][a] = r

    def of_int(self, c: int) -> int:
        return c % self.p

    def eval(self, F: MultiPoly, pt) -> int:
        total = 0
        for e, c in F.terms.items():
            v = self.of_int(c)
            for x, k in zip(pt, e):
                for _ in range(k):
                    v = self.mult[v][x]
            total = self.addt[total][v]
        return total


def naive_projective_points(q: int, n: int):
    """Points of P^(n-1) as tuples whose first nonzero entry is 1."""
    for pt in product(range(q), repeat=n):
        nz = [c for c in pt if c]
        if nz and nz[0] == 1:
            yield pt


def naive_count_hypersurface(F: MultiPoly, p: int, k: int = 1) -> int:
    K = NaiveField(p, k)
    return sum(1 for pt in naive_projective_points(K.q, F.ring.nvars) if K.eval(F, pt) == 0)


def naive_count_double_cover(f: MultiPoly, p: int, k: int = 1) -> int:
    """Count pairs (P, w) with P in P^2 normalized and ``w^2 = f(P)``."""
    K = NaiveField(p, k)
    squares = [K.mult[w][w] for w in range(K.q)]
    total = 0
    for pt in naive_projective_points(K.q, 3):
        v = K.eval(f, pt)
        total += sum(1 for s in squares if s == v)
    return total


def naive_d_list(N: int) -> list[int]:
    """d in (4, N] such that 2 is a square modulo d, by scanning all residues."""
    return [d for d in range(5, N + 1) if any((x * x - 2) % d == 0 for x in range(d))]


def naive_pell_solutions(m: int, box: int) -> set[tuple[int, int]]:
    """All (x, y) with ``x^2 - 2 y^2 = m`` and ``|x|, |y| <= box``."""
    return {(x, y) for x in range(-box, box + 1) for y in range(-box, box + 1) if x * x - 2 * y * y == m}
