"""Roots, reflections and the ample chamber of rank-2 Picard lattices.

The nodal-quartic lattice ``[4 0 -2]`` has basis ``(H, E)``; a class
``x H - y E`` is the vector ``LatVec(x, -y)``.  Its ample chamber is cut out by
the walls ``E`` and ``N = 2H - 3E``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import isqrt

from .forms import (
    BinaryForm, _divisors, _linear_factors, _pell_classes, pell_fundamental_unit, solve_pell_like,
)
from .lattice import GramLattice2, LatVec, LatticeError, signature2

__all__ = [
    "NonRoot",
    "StepLimit",
    "WallSet",
    "FixedLocus",
    "AmpleWitness",
    "NoSolution",
    "ChamberStatus",
    "Ample",
    "RootObstruction",
    "NODAL_LATTICE",
    "NODAL_WALLS",
    "reflect",
    "roots",
    "is_ample_nodal",
    "chamber_status",
    "reduce_to_ample",
    "apply_word",
    "ample_search_2d",
    "involution_pullback",
    "verify_genus2_ample",
    "nikulin_bound",
]


class NonRoot(ValueError):
    """The reflection vector does not have square -2."""


class StepLimit(RuntimeError):
    """Chamber descent did not finish within the step budget."""


@dataclass(frozen=True)
class WallSet:
    lattice: GramLattice2
    walls: tuple[LatVec, ...]
    reference: LatVec

    def __post_init__(self):
        L = self.lattice
        for w in self.walls:
            if L.square(w) != -2:
                raise NonRoot(f"wall {w} has square {L.square(w)}")
        if L.square(self.reference) <= 0:
            raise LatticeError("reference direction must have positive square")


NODAL_LATTICE = GramLattice2(4, 0, -2)
NODAL_WALLS = WallSet(NODAL_LATTICE, (LatVec(0, 1), LatVec(2, -3)), LatVec(1, 0))


def reflect(L: GramLattice2, delta: LatVec, x: LatVec) -> LatVec:
    if L.square(delta) != -2:
        raise NonRoot(f"{delta} has square {L.square(delta)}, not -2")
    return x + L.inner(x, delta) * delta


def _sign_normal(v: LatVec) -> LatVec:
    return -v if (v.u < 0 or (v.u == 0 and v.v < 0)) else v


def roots(L: GramLattice2, coeff_bound: int, method: str = "box") -> list[LatVec]:
    """Vectors of square -2, one per sign pair.

    ``method="box"`` lists every root with ``|u|, |v| <= coeff_bound``.
    ``method="pell"`` lists, for each class of solutions of the associated Pell
    equation, the roots reached within one period of the unit action modulo
    ``2a``; every root is a unit multiple of one of them.
    """
    if signature2(L) != (1, 1):
        raise LatticeError(f"[{L}] is not hyperbolic")
    if method == "box":
        found = set()
        for u in range(-coeff_bound, coeff_bound + 1):
            for v in range(-coeff_bound, coeff_bound + 1):
                if L.a * u * u + 2 * L.b * u * v + L.c * v * v == -2:
                    found.add(_sign_normal(LatVec(u, v)))
        return sorted(found, key=lambda r: (abs(r.u) + abs(r.v), r.u, r.v))
    if method != "pell":
        raise ValueError(f"unknown method {method!r}")
    return _pell_roots(L)


def _pell_roots(L: GramLattice2) -> list[LatVec]:
    F = BinaryForm.from_lattice(L)
    if F.A == 0:
        F, swap = BinaryForm(F.C, F.B, F.A), True
    else:
        swap = False
    D = F.disc
    r = isqrt(D) if D >= 0 else -1
    found = set()
    if r * r == D:
        # square discriminant: finitely many roots, enumerate the box they live in
        k, (a1, b1), (a2, b2) = _linear_factors(F)
        if -2 % k == 0:
            m, det = -2 // k, a1 * b2 - a2 * b1
            for d in _divisors(m):
                for u in (d, -d):
                    v = m // u
                    xn, yn = u * b2 - v * b1, a1 * v - a2 * u
                    if det and xn % det == 0 and yn % det == 0:
                        found.add((xn // det, yn // det))
    else:
        x1, y1 = pell_fundamental_unit(D)
        M = 2 * abs(F.A)
        period, (u, v) = 1, (x1 % M, y1 % M)
        while (u, v) != (1 % M, 0):
            u, v = (u * x1 + D * v * y1) % M, (u * y1 + v * x1) % M
            period += 1
        for X0, Y0 in _pell_classes(D, -8 * F.A):
            X, Y = X0, Y0
            for _ in range(period):
                if (X - F.B * Y) % (2 * F.A) == 0:
                    found.add(((X - F.B * Y) // (2 * F.A), Y))
                X, Y = X * x1 + D * Y * y1, X * y1 + Y * x1
    out = {_sign_normal(LatVec(y, x) if swap else LatVec(x, y)) for x, y in found}
    return sorted(out, key=lambda r: (abs(r.u) + abs(r.v), r.u, r.v))


def is_ample_nodal(x: int, y: int) -> bool:
    """Whether ``x H - y E`` lies strictly inside the ample cone of ``[4 0 -2]``."""
    return 0 < y and 3 * y < 4 * x


@dataclass(frozen=True)
class ChamberStatus:
    ample: bool
    closure: bool
    pairings: tuple[int, ...]


def chamber_status(walls: WallSet, x: LatVec) -> ChamberStatus:
    """Strict ampleness versus membership of the closed chamber.

    A class pairing to zero with some wall is reported with
    ``ample=False, closure=True``.
    """
    L = walls.lattice
    pairs = tuple(L.inner(x, w) for w in walls.walls)
    positive = L.square(x) > 0 and L.inner(x, walls.reference) > 0
    return ChamberStatus(
        ample=positive and all(p > 0 for p in pairs),
        closure=positive and all(p >= 0 for p in pairs),
        pairings=pairs,
    )


def apply_word(walls: WallSet, word, x: LatVec) -> LatVec:
    """Replay a reflection word; entry ``-1`` is the global sign flip."""
    for i in word:
        x = -x if i == -1 else reflect(walls.lattice, walls.walls[i], x)
    return x


def reduce_to_ample(walls: WallSet, x: LatVec, step_limit: int = 10**6):
    """Move ``x`` into the closed ample chamber by reflections.

    Each step reflects in the wall with the most negative pairing (ties go to
    the earlier wall).  Returns the reduced vector and the word of wall
    indices applied, in order; a leading ``-1`` records a sign flip into the
    positive cone.
    """
    L = walls.lattice
    if L.square(x) <= 0:
        raise LatticeError(f"{x} is not in the positive cone (square {L.square(x)})")
    word = []
    if L.inner(x, walls.reference) < 0:
        x = -x
        word.append(-1)
    for _ in range(step_limit):
        pairs = [L.inner(x, w) for w in walls.walls]
        worst = min(range(len(pairs)), key=lambda i: (pairs[i], i))
        if pairs[worst] >= 0:
            return x, tuple(word)
        x = reflect(L, walls.walls[worst], x)
        word.append(worst)
    raise StepLimit(f"not reduced after {step_limit} reflections")


@dataclass(frozen=True)
class AmpleWitness:
    """A primitive ample class ``x0 H - y0 E`` of square ``2d`` on ``[4 0 -2]``."""

    d: int
    x0: int
    y0: int
    word: tuple[int, ...] = field(default=(), compare=False)

    @property
    def vector(self) -> LatVec:
        return LatVec(self.x0, -self.y0)

    @property
    def square(self) -> int:
        return NODAL_LATTICE.square(self.vector)

    def as_dict(self):
        return {"d": self.d, "witness": [self.x0, self.y0], "square": self.square,
                "word_length": len(self.word)}


@dataclass(frozen=True)
class NoSolution:
    d: int
    reason: str  # "no_solution" or "no_primitive_solution"

    def as_dict(self):
        return {"d": self.d, "verdict": "no_solution", "reason": self.reason}


def ample_search_2d(d: int):
    """Primitive ample class of square ``2d`` on the nodal-quartic lattice.

    Pipeline: orbit representatives of ``X^2 - 2 Y^2 = -d`` (``X = y0``,
    ``Y = x0``), keep the primitive ones, reduce each into the ample chamber
    and return the smallest strictly ample result.
    """
    if d <= 2:
        raise ValueError("d must exceed 2")
    sols = solve_pell_like(-d)
    if not sols:
        return NoSolution(d, "no_solution")
    prim = [s for s in sols if s.primitive]
    if not prim:
        return NoSolution(d, "no_primitive_solution")
    best = None
    for s in prim:
        x0, y0 = s.swapped()
        v, word = reduce_to_ample(NODAL_WALLS, LatVec(x0, -y0))
        if not chamber_status(NODAL_WALLS, v).ample:
            continue
        cand = AmpleWitness(d, v.u, -v.v, word)
        if best is None or (cand.x0, cand.y0) < (best.x0, best.y0):
            best = cand
    if best is None:
        return NoSolution(d, "boundary_only")
    return best


def involution_pullback(e: int) -> tuple[tuple[int, int], tuple[int, int]]:
    """Matrix (columns = images of H, C) of the nontrivial isometry of ``[4 e 2]`` fixing C.

    Solves ``(aH + bC)^2 = 4`` and ``C.(aH + bC) = e`` for ``(a, b) != (1, 0)``.
    Substituting ``b = e(1 - a)/2`` leaves ``(8 - e^2)(a^2 - 1) = 0``.
    """
    if e <= 4:
        raise ValueError("e must exceed 4")
    L = GramLattice2(4, e, 2)
    sols = []
    for a in (1, -1):
        num = e * (1 - a)
        if num % 2 == 0:
            b = num // 2
            img = LatVec(a, b)
            if L.square(img) == 4 and L.inner(LatVec(0, 1), img) == e and (a, b) != (1, 0):
                sols.append((a, b))
    (a, b), = sols
    M = ((a, 0), (b, 1))
    assert L.transform(M) == L
    return M


@dataclass(frozen=True)
class Ample:
    e: int


@dataclass(frozen=True)
class RootObstruction:
    a: int
    b: int


def verify_genus2_ample(e: int):
    """Whether the genus-2 class C of ``[4 e 2]`` avoids every root wall.

    A root ``aH + bC`` orthogonal to C has ``b = -ea/2`` and
    ``a^2 (e^2 - 8) = 4``.
    """
    k = e * e - 8
    if k > 0 and 4 % k == 0:
        a = isqrt(4 // k)
        if a * a * k == 4 and (e * a) % 2 == 0:
            return RootObstruction(a, -e * a // 2)
    return Ample(e)


@dataclass(frozen=True)
class FixedLocus:
    """Fixed locus type of a holomorphic involution.

    ``variant`` is ``symplectic``, ``nonsymplectic_empty``,
    ``nonsymplectic_two_elliptic`` or ``nonsymplectic_curves``; the last carries
    the genus ``p_a`` of the non-rational curve and the number ``k`` of
    rational curves.
    """

    variant: str
    p_a: int = 0
    k: int = 0

    def __post_init__(self):
        if self.variant not in _NIKULIN:
            raise ValueError(f"unknown fixed-locus variant {self.variant!r}")
        if self.p_a < 0 or self.k < 0:
            raise ValueError("p_a and k must be nonnegative")


_NIKULIN = {
    "symplectic": lambda fl: 9,
    "nonsymplectic_empty": lambda fl: 10,
    "nonsymplectic_two_elliptic": lambda fl: 10,
    "nonsymplectic_curves": lambda fl: 11 - fl.p_a + fl.k,
}


def nikulin_bound(desc: FixedLocus) -> int:
    """Lower bound for the Picard number forced by the fixed locus."""
    return _NIKULIN[desc.variant](desc)
