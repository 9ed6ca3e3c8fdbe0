"""Integral binary quadratic forms attached to rank-2 even lattices.

The form of a lattice ``[a b c]`` is ``q(x, y) = a x^2 + 2b xy + c y^2``, the
square of the vector ``(x, y)``.  This module decides whether ``q`` represents
a given integer.  A positive answer is a :class:`RepWitness`; a negative answer
is an :class:`ObstructionCert` that can be replayed independently.

Pell-type equations ``x^2 - 2y^2 = m`` are solved by descent on ideals
``(m, t + sqrt 2)`` of Z[sqrt 2], which has class number one.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from math import gcd, isqrt

import numpy as np
from sympy import factorint, primerange

from .lattice import GramLattice2

__all__ = [
    "BinaryForm",
    "RepWitness",
    "ObstructionCert",
    "Unknown",
    "PellSolution",
    "NotSquare",
    "NoCertificate",
    "SizeLimit",
    "qr2_mod",
    "d_list",
    "solve_pell_like",
    "represents",
    "witnesses",
    "modular_certificate",
    "certificate_schedule",
    "no_minus_two_for_family",
    "square_disc_factor",
    "pell_fundamental_unit",
]

DESCENT_LIMIT = 10**6
PELL_SEARCH_LIMIT = 10**6
PRIME_POWER_BOUND = 512


class NotSquare(ValueError):
    """The form discriminant is not a perfect square."""


class NoCertificate(ValueError):
    """A non-representation certificate was requested but the value is represented."""


class SizeLimit(ValueError):
    """Input exceeds the desk-scale bound of a search."""


@dataclass(frozen=True)
class BinaryForm:
    A: int
    B: int
    C: int
    disc: int = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "disc", self.B * self.B - 4 * self.A * self.C)

    @classmethod
    def from_lattice(cls, L: GramLattice2) -> "BinaryForm":
        return cls(L.a, 2 * L.b, L.c)

    def __call__(self, x: int, y: int) -> int:
        return self.A * x * x + self.B * x * y + self.C * y * y

    @property
    def content(self) -> int:
        return gcd(gcd(self.A, self.B), self.C)

    def __str__(self):
        return f"{self.A}*x^2 {self.B:+d}*x*y {self.C:+d}*y^2"


@dataclass(frozen=True)
class RepWitness:
    x: int
    y: int
    value: int
    form: BinaryForm | None = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        if self.form is not None and self.form(self.x, self.y) != self.value:
            raise ValueError(f"q({self.x}, {self.y}) != {self.value}")

    def as_dict(self):
        return {"x": self.x, "y": self.y, "value": self.value}


@dataclass(frozen=True)
class Unknown:
    reason: str

    def as_dict(self):
        return {"reason": self.reason}


@dataclass(frozen=True)
class ObstructionCert:
    """Proof that ``form`` does not represent ``n``.

    ``kind`` is one of ``modular`` (no solution modulo ``modulus``),
    ``factorization`` (square discriminant, finite divisor enumeration in
    ``trace``), ``pell`` (all solution classes of the associated Pell equation
    fail the congruence) or ``definite`` (exhaustive search of the bounded
    region of a definite form).
    """

    kind: str
    form: BinaryForm
    n: int
    modulus: int | None = None
    trace: tuple = ()

    def replay(self) -> bool:
        if self.kind == "modular":
            return not _represents_mod(self.form, self.n, self.modulus)
        if self.kind == "factorization":
            res = _factorization_decide(self.form, self.n)
            return isinstance(res, ObstructionCert) and res.trace == self.trace
        if self.kind == "pell":
            return _pell_decide(self.form, self.n) is None
        if self.kind == "definite":
            return not _definite_witnesses(self.form, self.n)
        raise ValueError(f"unknown certificate kind {self.kind!r}")

    def as_dict(self):
        out = {"kind": self.kind, "n": self.n}
        if self.modulus is not None:
            out["modulus"] = self.modulus
        if self.trace:
            out["trace"] = [list(t) for t in self.trace]
        return out


@dataclass(frozen=True)
class PellSolution:
    """A solution of ``x^2 - 2 y^2 = m`` in the classical orientation."""

    x: int
    y: int
    m: int

    def __post_init__(self):
        if self.x * self.x - 2 * self.y * self.y != self.m:
            raise ValueError(f"({self.x}, {self.y}) does not solve x^2 - 2y^2 = {self.m}")

    @property
    def primitive(self) -> bool:
        return gcd(self.x, self.y) == 1

    def swapped(self) -> tuple[int, int]:
        """Coordinates ``(x', y')`` solving ``y'^2 - 2 x'^2 = m``."""
        return (self.y, self.x)

    def unit_step(self) -> "PellSolution":
        """Multiply by 3 + 2 sqrt 2, the generator of the norm-one units."""
        return PellSolution(3 * self.x + 4 * self.y, 2 * self.x + 3 * self.y, self.m)


# -- quadratic residues ------------------------------------------------------

def qr2_mod(d: int) -> int | None:
    """Smallest ``y`` in ``[0, d)`` with ``y^2 = 2 (mod d)``, or None."""
    if d < 1:
        raise ValueError("d must be positive")
    y = np.arange(d, dtype=object if d > 3_000_000_000 else np.int64)
    hits = np.nonzero((y * y) % d == 2 % d)[0]
    return int(hits[0]) if len(hits) else None


def d_list(N: int) -> list[int]:
    """All ``2 < d <= N`` such that 2 is a square modulo ``d``."""
    return [d for d in range(3, N + 1) if qr2_mod(d) is not None]


# -- Pell equation x^2 - 2y^2 = m -------------------------------------------

def _sqrt2_roots(m: int) -> list[int]:
    am = abs(m)
    if am > DESCENT_LIMIT:
        raise SizeLimit(f"|m| = {am} exceeds the descent limit {DESCENT_LIMIT}")
    t = np.arange(am, dtype=np.int64)
    return [int(v) for v in np.nonzero((t * t) % am == 2 % am)[0]]


def _ideal_generator(m: int, t: int) -> tuple[int, int]:
    """Generator x + y sqrt 2 of the ideal (m, t + sqrt 2), given t^2 = 2 mod m."""
    if abs(m) == 1:
        return (1, 0)
    m1 = (t * t - 2) // m
    am1 = abs(m1)
    t1 = t % am1
    if 2 * t1 > am1:
        t1 -= am1
    a, b = _ideal_generator(m1, t1)
    norm = a * a - 2 * b * b
    # (t + sqrt 2) * conj(alpha) / N(alpha)
    X, Y = t * a - 2 * b, a - t * b
    assert X % norm == 0 and Y % norm == 0
    return (X // norm, Y // norm)


def _orbit_key(x: int, y: int):
    return (abs(x) + abs(y), 0 if y >= 0 else 1, abs(x))


def _normalize_sign(x: int, y: int) -> tuple[int, int]:
    if x < 0 or (x == 0 and y < 0):
        return (-x, -y)
    return (x, y)


def _canonical(x: int, y: int) -> tuple[int, int]:
    """Smallest representative of {+-(x + y sqrt 2)(3 + 2 sqrt 2)^k}."""
    up = lambda a, b: (3 * a + 4 * b, 2 * a + 3 * b)
    down = lambda a, b: (3 * a - 4 * b, -2 * a + 3 * b)
    size = lambda a, b: abs(a) + abs(b)
    cur = (x, y)
    for step in (up, down):
        while size(*step(*cur)) < size(*cur):
            cur = step(*cur)
    cands = [cur, up(*cur), down(*cur)]
    return min((_normalize_sign(*c) for c in cands), key=lambda c: _orbit_key(*c))


def _primitive_pell(m: int) -> list[tuple[int, int]]:
    reps = []
    for t in _sqrt2_roots(m):
        tc = t - abs(m) if 2 * t > abs(m) else t
        x, y = _ideal_generator(m, tc)
        if x * x - 2 * y * y == -m:
            x, y = x + 2 * y, x + y  # times 1 + sqrt 2, norm -1
        reps.append(_canonical(x, y))
    return reps


def solve_pell_like(m: int) -> list[PellSolution]:
    """Orbit representatives of the solutions of ``x^2 - 2 y^2 = m``.

    Every integer solution is ``+-(x + y sqrt 2)(3 + 2 sqrt 2)^k`` for exactly
    one returned ``(x, y)``.  Imprimitive orbits ``f * (primitive of m/f^2)``
    are included.
    """
    if m == 0:
        raise ValueError("m must be nonzero")
    out = []
    f = 1
    while f * f <= abs(m):
        if m % (f * f) == 0:
            for x, y in _primitive_pell(m // (f * f)):
                out.append(PellSolution(f * x, f * y, m))
        f += 1
    out.sort(key=lambda s: _orbit_key(s.x, s.y))
    return out


def pell_fundamental_unit(D: int) -> tuple[int, int]:
    """Least ``(x, y)`` with ``x^2 - D y^2 = 1``, ``y > 0``, by continued fractions."""
    a0 = isqrt(D)
    if a0 * a0 == D:
        raise ValueError("D must not be a square")
    m, d, a = 0, 1, a0
    p_prev, p = 1, a0
    q_prev, q = 0, 1
    while p * p - D * q * q != 1:
        m = d * a - m
        d = (D - m * m) // d
        a = (a0 + m) // d
        p_prev, p = p, a * p + p_prev
        q_prev, q = q, a * q + q_prev
    return (p, q)


# -- representation ----------------------------------------------------------

def witnesses(F: BinaryForm, n: int, bound: int) -> list[tuple[int, int]]:
    """All ``(x, y)`` with ``|x|, |y| <= bound`` and ``F(x, y) = n``, sorted."""
    found = set()
    A, B, C = F.A, F.B, F.C
    for x in range(-bound, bound + 1):
        const = A * x * x - n
        if C == 0:
            if B * x == 0:
                if const == 0:
                    found.update((x, y) for y in range(-bound, bound + 1))
            elif const % (B * x) == 0:
                y = -const // (B * x)
                if abs(y) <= bound:
                    found.add((x, y))
            continue
        dy = (B * x) ** 2 - 4 * C * const
        if dy < 0:
            continue
        s = isqrt(dy)
        if s * s != dy:
            continue
        for num in {-B * x + s, -B * x - s}:
            if num % (2 * C) == 0:
                y = num // (2 * C)
                if abs(y) <= bound:
                    found.add((x, y))
    return sorted(found)


def _best(points):
    return min(points, key=lambda p: (abs(p[0]) + abs(p[1]), p))


def _divisors(n: int) -> list[int]:
    n = abs(n)
    small = [d for d in range(1, isqrt(n) + 1) if n % d == 0]
    return sorted(set(small + [n // d for d in small]))


def _primitive_linear(a: int, b: int) -> tuple[int, int, int]:
    g = gcd(a, b)
    a, b = a // g, b // g
    if a < 0 or (a == 0 and b < 0):
        return (-g, -a, -b)
    return (g, a, b)


def _linear_factors(F: BinaryForm):
    """``(k, L1, L2)`` with ``F = k * L1 * L2`` and L1, L2 primitive."""
    s = isqrt(F.disc) if F.disc >= 0 else -1
    if s < 0 or s * s != F.disc:
        raise NotSquare(f"discriminant {F.disc} is not a perfect square")
    A, B, C = F.A, F.B, F.C
    if A == 0:
        raw = [(0, 1), (B, C)]
    else:
        raw = [(2 * A, B - s), (2 * A, B + s)]
    g1, a1, b1 = _primitive_linear(*raw[0])
    g2, a2, b2 = _primitive_linear(*raw[1])
    # leading coefficients of (a1 x + b1 y)(a2 x + b2 y) fix the scalar k
    prod = (a1 * a2, a1 * b2 + a2 * b1, b1 * b2)
    target = (A, B, C)
    i = next(j for j in range(3) if prod[j] != 0)
    k = target[i] // prod[i]
    assert tuple(k * c for c in prod) == target
    L1, L2 = sorted([(a1, b1), (a2, b2)], key=lambda l: (abs(l[1]), -l[1]))
    return k, L1, L2


def square_disc_factor(F: BinaryForm) -> tuple[tuple[int, int], tuple[int, int]]:
    """Linear forms ``(L1, L2)`` with ``L1 * L2 = F`` exactly.

    A linear form ``(alpha, beta)`` stands for ``alpha x + beta y``.  Both factors
    are primitive except that the content of ``F`` (with its sign) is carried by
    ``L1``.  Raises :class:`NotSquare` when the discriminant is not a square.
    """
    k, (a1, b1), L2 = _linear_factors(F)
    return (k * a1, k * b1), L2


def _solve_linear(a: int, b: int, t: int):
    """One integer solution of ``a x + b y = t`` for primitive (a, b)."""
    def egcd(u, v):
        if v == 0:
            return (u, 1, 0)
        g, s, r = egcd(v, u % v)
        return (g, r, s - (u // v) * r)
    g, s, r = egcd(a, b)
    return (s * t * g, r * t * g)  # g = +-1


def _factorization_decide(F: BinaryForm, n: int):
    k, (a1, b1), (a2, b2) = _linear_factors(F)
    if n % k:
        return ObstructionCert("factorization", F, n, trace=(("content", k),))
    m = n // k
    det = a1 * b2 - a2 * b1
    trace = []
    if det == 0:
        sgn = a2 // a1 if a1 else b2 // b1
        r = m * sgn
        u = isqrt(r) if r >= 0 else -1
        if u >= 0 and u * u == r:
            x, y = _solve_linear(a1, b1, u)
            return RepWitness(x, y, n, F)
        return ObstructionCert("factorization", F, n, trace=(("square", r),))
    hits = []
    for d in _divisors(m):
        for u in (d, -d):
            v = m // u
            xn, yn = u * b2 - v * b1, a1 * v - a2 * u
            if xn % det == 0 and yn % det == 0:
                hits.append((xn // det, yn // det))
            else:
                trace.append((u, v, det, xn, yn))
    if hits:
        x, y = _best(hits)
        return RepWitness(x, y, n, F)
    return ObstructionCert("factorization", F, n, trace=tuple(trace))


@lru_cache(maxsize=4096)
def _values_mod(A: int, B: int, C: int, m: int) -> frozenset:
    x = np.arange(m, dtype=np.int64)
    v = ((A % m) * x * x % m)[:, None] + ((B % m) * np.outer(x, x)) % m + ((C % m) * x * x % m)[None, :]
    return frozenset(int(r) for r in np.unique(v % m))


def _represents_mod(F: BinaryForm, n: int, m: int) -> bool:
    return (n % m) in _values_mod(F.A, F.B, F.C, m)


def modular_certificate(F: BinaryForm, n: int, m: int) -> ObstructionCert | None:
    if m < 1:
        raise ValueError("modulus must be positive")
    if _represents_mod(F, n, m):
        return None
    return ObstructionCert("modular", F, n, modulus=m)


@lru_cache(maxsize=None)
def _prime_powers(bound: int) -> tuple[int, ...]:
    out = []
    for p in primerange(2, bound + 1):
        q = p
        while q <= bound:
            out.append(q)
            q *= p
    return tuple(sorted(out))


def certificate_schedule(F: BinaryForm) -> list[int]:
    """Moduli tried for modular certificates, in order.

    First the moduli read off the coefficients, ``gcd(A, B)`` and ``gcd(B, C)``
    (modulo these the form collapses to a single square term), then every
    prime power up to 512.  Products of coprime moduli are never needed: by
    the Chinese remainder theorem they obstruct only if a factor does.
    """
    sched = []
    for g in (gcd(F.A, F.B), gcd(F.B, F.C)):
        if 1 < g <= PRIME_POWER_BOUND**2 and g not in sched:
            sched.append(g)
    sched.extend(q for q in _prime_powers(PRIME_POWER_BOUND) if q not in sched)
    return sched


def _definite_witnesses(F: BinaryForm, n: int) -> list[tuple[int, int]]:
    # 4A q = (2Ax + By)^2 + |disc| y^2
    A, B, D = F.A, F.B, -F.disc
    if A < 0:
        A, B, n = -A, -B, -n
        F = BinaryForm(-F.A, -F.B, -F.C)
    if n < 0:
        return []
    ymax = isqrt(4 * A * n // D)
    out = []
    for y in range(-ymax, ymax + 1):
        r = 4 * A * n - D * y * y
        if r < 0:
            continue
        s = isqrt(r)
        if s * s != r:
            continue
        for X in {s, -s}:
            if (X - B * y) % (2 * A) == 0:
                out.append(((X - B * y) // (2 * A), y))
    return out


def _pell_classes(D: int, N: int) -> list[tuple[int, int]]:
    """Fundamental solutions of ``X^2 - D Y^2 = N`` (both signs of X, Y >= 0)."""
    x1, y1 = pell_fundamental_unit(D)
    if N > 0:
        lo, hi = 0, isqrt(N * y1 * y1 // (2 * (x1 + 1)))
    else:
        lo, hi = isqrt(-N // D), isqrt(-N * y1 * y1 // (2 * (x1 - 1)))
    if hi - lo > PELL_SEARCH_LIMIT:
        raise SizeLimit(f"Pell class search range {hi - lo} exceeds {PELL_SEARCH_LIMIT}")
    out = []
    for Y in range(lo, hi + 1):
        r = N + D * Y * Y
        if r < 0:
            continue
        X = isqrt(r)
        if X * X == r:
            out.extend({(X, Y), (-X, Y)})
    return out


def _pell_decide(F: BinaryForm, n: int):
    """Witness for ``F = n`` via ``4An = X^2 - disc Y^2``, or None if none exists."""
    A, B, D = F.A, F.B, F.disc
    if A == 0:
        raise ValueError("pell reduction needs A != 0")
    x1, y1 = pell_fundamental_unit(D)
    M = 2 * abs(A)
    # period of multiplication by the unit modulo M
    period, (u, v) = 1, (x1 % M, y1 % M)
    while (u, v) != (1 % M, 0):
        u, v = (u * x1 + D * v * y1) % M, (u * y1 + v * x1) % M
        period += 1
    best = None
    for X0, Y0 in _pell_classes(D, 4 * A * n):
        for sgn in (1, -1):
            X, Y = sgn * X0, sgn * Y0
            for _ in range(period):
                if (X - B * Y) % (2 * A) == 0:
                    cand = ((X - B * Y) // (2 * A), Y)
                    if best is None or _orbit_key(*cand) < _orbit_key(*best):
                        best = cand
                X, Y = X * x1 + D * Y * y1, X * y1 + Y * x1
    return best


def represents(F: BinaryForm, n: int, search_bound: int = 100):
    """Decide whether ``F`` represents ``n``.

    Tries, in order: the box ``|x|, |y| <= search_bound``; linear factorization
    when the discriminant is a square; the modular schedule of
    :func:`certificate_schedule`; exhaustive search for definite forms; Pell
    reduction for indefinite forms with non-square discriminant.  Returns a
    :class:`RepWitness` (smallest ``|x| + |y|``, then lexicographic), an
    :class:`ObstructionCert`, or :class:`Unknown`.
    """
    if search_bound < 1:
        raise ValueError("search_bound must be positive")
    if n == 0:
        return RepWitness(0, 0, 0, F)
    box = witnesses(F, n, search_bound)
    if box:
        x, y = _best(box)
        return RepWitness(x, y, n, F)
    disc = F.disc
    if disc >= 0 and isqrt(disc) ** 2 == disc:
        return _factorization_decide(F, n)
    for m in certificate_schedule(F):
        cert = modular_certificate(F, n, m)
        if cert is not None:
            return cert
    if disc < 0:
        found = _definite_witnesses(F, n)
        if found:
            x, y = _best(found)
            return RepWitness(x, y, n, F)
        return ObstructionCert("definite", F, n)
    try:
        found = _pell_decide(F, n)
    except SizeLimit as exc:
        return Unknown(str(exc))
    if found is not None:
        return RepWitness(found[0], found[1], n, F)
    return ObstructionCert("pell", F, n)


def no_minus_two_for_family(d: int) -> ObstructionCert:
    """Factorization certificate that ``[2 d+1 2d]`` has no vector of square -2.

    The trace lists each divisor pair ``(u, v)`` of ``-1`` together with the
    determinant ``d - 1`` and the numerators it fails to divide.
    """
    if d <= 1:
        raise NoCertificate(f"[2 {d + 1} {2 * d}] is degenerate or not hyperbolic")
    F = BinaryForm.from_lattice(GramLattice2(2, d + 1, 2 * d))
    res = _factorization_decide(F, -2)
    if not isinstance(res, ObstructionCert):
        raise NoCertificate(f"d = {d}: ({res.x}, {res.y}) has square -2")
    return res
