"""Rank-2 even lattices and their vectors.

A lattice ``[a b c]`` is the free module Z^2 with Gram matrix ((a, b), (b, c)).
By convention the first basis vector is the polarization class H of the
surface the lattice belongs to.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

__all__ = [
    "LatticeError",
    "GramLattice2",
    "LatVec",
    "inner",
    "determinant",
    "signature2",
    "genus_of_class",
    "is_primitive",
]


class LatticeError(ValueError):
    """Raised for odd or degenerate Gram data and invalid vectors."""


@dataclass(frozen=True)
class GramLattice2:
    a: int
    b: int
    c: int

    def __post_init__(self):
        for name in ("a", "b", "c"):
            if not isinstance(getattr(self, name), int):
                raise LatticeError(f"Gram entry {name} must be an integer")
        if self.a % 2 or self.c % 2:
            raise LatticeError(f"[{self}] is not even: diagonal entries must be even")
        if self.a * self.c - self.b * self.b == 0:
            raise LatticeError(f"[{self}] is degenerate")

    @classmethod
    def parse(cls, text: str) -> "GramLattice2":
        """Read the ``"a b c"`` serialization (brackets optional)."""
        parts = text.replace("[", " ").replace("]", " ").split()
        if len(parts) != 3:
            raise LatticeError(f"expected three integers, got {text!r}")
        try:
            a, b, c = (int(s) for s in parts)
        except ValueError as exc:
            raise LatticeError(f"non-integer Gram entry in {text!r}") from exc
        return cls(a, b, c)

    def __str__(self):
        return f"{self.a} {self.b} {self.c}"

    @property
    def gram(self) -> tuple[tuple[int, int], tuple[int, int]]:
        return ((self.a, self.b), (self.b, self.c))

    def inner(self, x: "LatVec", y: "LatVec") -> int:
        return self.a * x.u * y.u + self.b * (x.u * y.v + x.v * y.u) + self.c * x.v * y.v

    def square(self, x: "LatVec") -> int:
        return self.inner(x, x)

    @property
    def det(self) -> int:
        return self.a * self.c - self.b * self.b

    def transform(self, m) -> "GramLattice2":
        """Gram data in the basis given by the columns of the 2x2 matrix ``m``."""
        (p, q), (r, s) = m
        e1, e2 = LatVec(p, r), LatVec(q, s)
        return GramLattice2(self.square(e1), self.inner(e1, e2), self.square(e2))


@dataclass(frozen=True)
class LatVec:
    u: int
    v: int

    def __iter__(self):
        yield self.u
        yield self.v

    def __add__(self, other: "LatVec") -> "LatVec":
        return LatVec(self.u + other.u, self.v + other.v)

    def __sub__(self, other: "LatVec") -> "LatVec":
        return LatVec(self.u - other.u, self.v - other.v)

    def __neg__(self) -> "LatVec":
        return LatVec(-self.u, -self.v)

    def __rmul__(self, k: int) -> "LatVec":
        return LatVec(k * self.u, k * self.v)

    def __str__(self):
        return f"({self.u}, {self.v})"


def inner(L: GramLattice2, x: LatVec, y: LatVec) -> int:
    return L.inner(x, y)


def determinant(L: GramLattice2) -> int:
    return L.det


def signature2(L: GramLattice2) -> tuple[int, int]:
    """Exact inertia ``(n_plus, n_minus)`` of the Gram matrix."""
    det = L.det
    if det < 0:
        return (1, 1)
    # definite: a and c share the sign of the form
    return (2, 0) if L.a > 0 else (0, 2)


def genus_of_class(L: GramLattice2, d: LatVec) -> int:
    """Arithmetic genus read off the adjunction formula, ``d^2/2 + 1``."""
    return L.square(d) // 2 + 1


def is_primitive(x: LatVec) -> bool:
    if x.u == 0 and x.v == 0:
        raise LatticeError("the zero vector has no primitivity")
    return gcd(x.u, x.v) == 1
