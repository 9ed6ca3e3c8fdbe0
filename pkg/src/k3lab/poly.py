"""Sparse multivariate polynomials with exact integer coefficients.

A :class:`PolyRing` fixes the variable names and (optional) weights; a
:class:`MultiPoly` is a map from exponent tuples to nonzero Python ints.

Text format::

    vars x y z w [weights 1 1 1 3]
    +7*x^6 +x^5*y -x^4*y^2 -w^2

Terms are whitespace separated, each an optional sign, an optional integer
coefficient and ``*``-joined powers.  ``str()`` prints terms in descending
graded-lexicographic order and parsing the printed form gives back the same
polynomial, so printing is a fixed point.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Sequence

__all__ = [
    "PolyRing",
    "MultiPoly",
    "PolyError",
    "NotBihomogeneous",
    "NodalShape",
    "branch_sextic",
    "segre_transfer",
    "segre_components",
    "nodal_shape_check",
    "partials",
    "compose",
]


class PolyError(ValueError):
    """Malformed polynomial text, arity mismatch or failed degree check."""


class NotBihomogeneous(PolyError):
    pass


_NAME = re.compile(r"^[A-Za-z_][A-Za-z0-9_']*$")


@dataclass(frozen=True)
class PolyRing:
    names: tuple[str, ...]
    weights: tuple[int, ...]

    def __init__(self, names: Sequence[str] | str, weights: Sequence[int] | None = None):
        if isinstance(names, str):
            names = names.split()
        names = tuple(names)
        if len(set(names)) != len(names) or not all(_NAME.match(n) for n in names):
            raise PolyError(f"bad variable list {names}")
        weights = tuple(weights) if weights is not None else (1,) * len(names)
        if len(weights) != len(names) or any(w < 0 for w in weights):
            raise PolyError("weights must be nonnegative, one per variable")
        object.__setattr__(self, "names", names)
        object.__setattr__(self, "weights", weights)

    @classmethod
    def parse_decl(cls, line: str) -> "PolyRing":
        """Read ``vars x y z w [weights 1 1 1 3]``."""
        m = re.fullmatch(r"\s*vars\s+(.*?)(?:\s*\[\s*weights\s+([\d\s]+)\])?\s*", line)
        if not m:
            raise PolyError(f"bad variable declaration {line!r}")
        names = m.group(1).split()
        weights = [int(w) for w in m.group(2).split()] if m.group(2) else None
        return cls(names, weights)

    def decl(self) -> str:
        s = "vars " + " ".join(self.names)
        if any(w != 1 for w in self.weights):
            s += " [weights " + " ".join(map(str, self.weights)) + "]"
        return s

    @property
    def nvars(self) -> int:
        return len(self.names)

    @property
    def gens(self) -> tuple["MultiPoly", ...]:
        n = self.nvars
        return tuple(MultiPoly(self, {tuple(int(i == j) for j in range(n)): 1}) for i in range(n))

    def const(self, c: int) -> "MultiPoly":
        return MultiPoly(self, {(0,) * self.nvars: c})

    def zero(self) -> "MultiPoly":
        return MultiPoly(self, {})

    def parse(self, text: str) -> "MultiPoly":
        return MultiPoly.parse(text, self)

    def index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise PolyError(f"unknown variable {name!r}") from None

    def drop(self, i: int) -> "PolyRing":
        return PolyRing(self.names[:i] + self.names[i + 1:], self.weights[:i] + self.weights[i + 1:])


class MultiPoly:
    __slots__ = ("ring", "terms")

    def __init__(self, ring: PolyRing, terms: dict | None = None):
        self.ring = ring
        clean = {}
        n = ring.nvars
        for exp, c in (terms or {}).items():
            if len(exp) != n:
                raise PolyError(f"exponent {exp} has arity {len(exp)}, ring has {n}")
            if c:
                clean[tuple(exp)] = int(c)
        self.terms = clean

    # -- text ----------------------------------------------------------------

    @classmethod
    def parse(cls, text: str, ring: PolyRing) -> "MultiPoly":
        toks = text.split()
        merged, pending = [], ""
        for t in toks:
            if t in ("+", "-"):
                pending = t if pending in ("", "+") and t == "+" else ("-" if (pending == "-") != (t == "-") else "+")
                continue
            merged.append(pending + t if pending else t)
            pending = ""
        if pending:
            raise PolyError(f"dangling sign in {text!r}")
        if merged == ["0"]:
            return ring.zero()
        out: dict = {}
        for tok in merged:
            sign = 1
            body = tok
            while body and body[0] in "+-":
                sign = -sign if body[0] == "-" else sign
                body = body[1:]
            if not body:
                raise PolyError(f"empty term in {text!r}")
            coeff = 1
            exp = [0] * ring.nvars
            for fac in body.split("*"):
                if not fac:
                    raise PolyError(f"bad term {tok!r}")
                if fac.isdigit():
                    coeff *= int(fac)
                    continue
                name, caret, e = fac.partition("^")
                if name not in ring.names:
                    raise PolyError(f"unknown variable {name!r} in term {tok!r}")
                if caret and not e.isdigit():
                    raise PolyError(f"bad exponent in {tok!r}")
                exp[ring.index(name)] += int(e) if e else 1
            key = tuple(exp)
            out[key] = out.get(key, 0) + sign * coeff
        return cls(ring, out)

    def _sorted_terms(self):
        w = self.ring.weights
        return sorted(
            self.terms.items(),
            key=lambda kv: (sum(a * b for a, b in zip(kv[0], w)), kv[0]),
            reverse=True,
        )

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for exp, c in self._sorted_terms():
            mono = "*".join(
                n if e == 1 else f"{n}^{e}" for n, e in zip(self.ring.names, exp) if e
            )
            sign = "-" if c < 0 else "+"
            a = abs(c)
            if not mono:
                parts.append(f"{sign}{a}")
            elif a == 1:
                parts.append(f"{sign}{mono}")
            else:
                parts.append(f"{sign}{a}*{mono}")
        return " ".join(parts)

    def __repr__(self):
        return f"MultiPoly({self.ring.decl()!r}, {str(self)!r})"

    # -- arithmetic ----------------------------------------------------------

    def _coerce(self, other) -> "MultiPoly":
        if isinstance(other, MultiPoly):
            if other.ring != self.ring:
                raise PolyError("polynomials live in different rings")
            return other
        if isinstance(other, int):
            return self.ring.const(other)
        return NotImplemented

    def __eq__(self, other):
        if isinstance(other, MultiPoly) and other.ring != self.ring:
            return False
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash((self.ring, frozenset(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    def __neg__(self):
        return MultiPoly(self.ring, {e: -c for e, c in self.terms.items()})

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, 0) + c
        return MultiPoly(self.ring, out)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        out: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return MultiPoly(self.ring, out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise PolyError("exponent must be a nonnegative integer")
        result, base = self.ring.const(1), self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    # -- structure -----------------------------------------------------------

    def __len__(self):
        return len(self.terms)

    def coefficient(self, exp: Sequence[int]) -> int:
        return self.terms.get(tuple(exp), 0)

    def weighted_degrees(self) -> set[int]:
        w = self.ring.weights
        return {sum(a * b for a, b in zip(e, w)) for e in self.terms}

    @property
    def degree(self) -> int:
        """Largest weighted degree of a term (-1 for the zero polynomial)."""
        return max(self.weighted_degrees(), default=-1)

    def is_homogeneous(self, degree: int | None = None) -> bool:
        degs = self.weighted_degrees()
        if len(degs) > 1:
            return False
        return degree is None or not degs or degs == {degree}

    def degree_in(self, i: int) -> int:
        return max((e[i] for e in self.terms), default=-1)

    def coefficients_in(self, i: int) -> list["MultiPoly"]:
        """``[c_0, c_1, ...]`` with ``self = sum c_j * x_i^j``; each ``c_j`` stays in this ring."""
        out = [dict() for _ in range(self.degree_in(i) + 1)]
        for e, c in self.terms.items():
            out[e[i]][e[:i] + (0,) + e[i + 1:]] = c
        return [MultiPoly(self.ring, t) for t in out]

    def split_last(self) -> list["MultiPoly"]:
        """Coefficients of powers of the last variable, in the ring without it."""
        n = self.ring.nvars - 1
        sub = self.ring.drop(n)
        return [MultiPoly(sub, {e[:n]: c for e, c in cj.terms.items()})
                for cj in self.coefficients_in(n)]

    def extend(self, ring: PolyRing) -> "MultiPoly":
        """Same polynomial viewed in a ring with the same leading variables."""
        k = self.ring.nvars
        if ring.names[:k] != self.ring.names:
            raise PolyError("target ring does not extend this ring")
        pad = (0,) * (ring.nvars - k)
        return MultiPoly(ring, {e + pad: c for e, c in self.terms.items()})

    def partial(self, i: int) -> "MultiPoly":
        out = {}
        for e, c in self.terms.items():
            if e[i]:
                out[e[:i] + (e[i] - 1,) + e[i + 1:]] = c * e[i]
        return MultiPoly(self.ring, out)

    def partials(self) -> list["MultiPoly"]:
        return [self.partial(i) for i in range(self.ring.nvars)]

    def eval(self, point: Sequence):
        """Value at a point; coordinates may be ints or any ring elements."""
        if len(point) != self.ring.nvars:
            raise PolyError("point has the wrong number of coordinates")
        total = 0
        for e, c in self.terms.items():
            v = c
            for x, k in zip(point, e):
                if k:
                    v = v * x**k
            total = total + v
        return total

    def compose(self, subs: Sequence["MultiPoly"]) -> "MultiPoly":
        """Substitute ``subs[i]`` for the i-th variable."""
        if len(subs) != self.ring.nvars:
            raise PolyError(f"need {self.ring.nvars} substituents, got {len(subs)}")
        target = subs[0].ring
        if any(s.ring != target for s in subs):
            raise PolyError("substituents live in different rings")
        if self.terms and self.is_homogeneous():
            self._check_substituent_degrees(subs)
        cache = [{0: target.const(1), 1: s} for s in subs]

        def power(i, k):
            c = cache[i]
            if k not in c:
                c[k] = power(i, k - 1) * subs[i]
            return c[k]

        out = target.zero()
        for e, c in self._sorted_terms():
            term = target.const(c)
            for i, k in enumerate(e):
                if k:
                    term = term * power(i, k)
            out = out + term
        return out

    def _check_substituent_degrees(self, subs):
        # a weight-w variable needs a substituent of degree w*k for one common k
        ratio = None
        for i in range(self.ring.nvars):
            if not subs[i] or not any(e[i] for e in self.terms):
                continue
            if not subs[i].is_homogeneous():
                raise PolyError(f"substituent {i} is not homogeneous")
            r = (subs[i].degree, self.ring.weights[i])
            if ratio is not None and r[0] * ratio[1] != ratio[0] * r[1]:
                raise PolyError("substituent degrees are incompatible with the weights")
            ratio = ratio or r


def compose(f: MultiPoly, subs: Sequence[MultiPoly]) -> MultiPoly:
    return f.compose(subs)


def partials(F: MultiPoly) -> list[MultiPoly]:
    return F.partials()


def branch_sextic(f2: MultiPoly, f3: MultiPoly, f4: MultiPoly) -> MultiPoly:
    """Branch curve ``f3^2 - 4 f2 f4`` of a quartic ``f4 + f3 w + f2 w^2``."""
    for deg, f in ((2, f2), (3, f3), (4, f4)):
        if f.ring.nvars != 3:
            raise PolyError("branch data lives in three variables")
        if f and not f.is_homogeneous(deg):
            raise PolyError(f"expected a form of degree {deg}, got {f}")
    return f3 * f3 - 4 * f2 * f4


SEGRE_SOURCE = PolyRing("x0 x1 y0 y1")
SEGRE_TARGET = PolyRing("x y z w")


def segre_components(source: PolyRing = SEGRE_SOURCE, target: PolyRing = SEGRE_TARGET):
    """``(x0 y0, x0 y1, x1 y0, x1 y1)`` and the relation ``x w - y z`` of the image quadric."""
    x0, x1, y0, y1 = source.gens
    x, y, z, w = target.gens
    return [x0 * y0, x0 * y1, x1 * y0, x1 * y1], x * w - y * z


def segre_transfer(g: MultiPoly, target: PolyRing = SEGRE_TARGET):
    """Quartic-style pullback inverse of the Segre map.

    ``g`` must have bidegree ``(n, n)`` in ``(x0, x1; y0, y1)``.  Returns
    ``(F, relation)`` with ``F(segre) == g`` and ``relation = x w - y z``.  ``F``
    is the unique representative with no monomial divisible by ``x w``.
    """
    if g.ring.nvars != 4:
        raise PolyError("segre_transfer expects a polynomial in x0 x1 y0 y1")
    bidegs = {(e[0] + e[1], e[2] + e[3]) for e in g.terms}
    if len(bidegs) != 1 or (bd := next(iter(bidegs)))[0] != bd[1]:
        raise NotBihomogeneous(f"bidegrees {sorted(bidegs)} are not a single (n, n)")
    n = bd[0]
    out = {}
    for (a0, a1, b0, b1), c in g.terms.items():
        # x^i y^j z^k w^l maps to x0^(i+j) x1^(k+l) y0^(i+k) y1^(j+l)
        i = max(0, a0 + b0 - n)
        j, k, l = a0 - i, b0 - i, n - a0 - b0 + i
        out[(i, j, k, l)] = c
    _, relation = segre_components(g.ring, target)
    return MultiPoly(target, out), relation


def reduce_mod_segre(F: MultiPoly) -> MultiPoly:
    """Normal form modulo ``x w - y z``: every ``x w`` is rewritten as ``y z``."""
    out: dict = {}
    for (i, j, k, l), c in F.terms.items():
        t = min(i, l)
        e = (i - t, j + t, k + t, l - t)
        out[e] = out.get(e, 0) + c
    return MultiPoly(F.ring, out)


@dataclass(frozen=True)
class NodalShape:
    node_at_O: bool
    reason: str
    det: int | None = None


def _sym_det3(m):
    (a, b, c), (d, e, f), (g, h, i) = m
    return a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g)


def nodal_shape_check(F: MultiPoly) -> NodalShape:
    """Whether ``F`` has the shape ``f4 + f3 w + f2 w^2`` with a node at ``(0:0:0:1)``.

    The last variable plays the role of ``w``.  The node condition is that no
    ``w^3`` or ``w^4`` terms occur and the symmetric matrix of ``2 f2`` is
    nonsingular.
    """
    if F.ring.nvars != 4 or not F.is_homogeneous(4):
        raise PolyError("nodal_shape_check expects a quartic in four variables")
    parts = F.split_last()
    if len(parts) > 4 and parts[4]:
        return NodalShape(False, "w^4 term present")
    if len(parts) > 3 and parts[3]:
        return NodalShape(False, "w^3 term present")
    f2 = parts[2] if len(parts) > 2 else F.ring.drop(3).zero()
    M = [[0] * 3 for _ in range(3)]
    for e, c in f2.terms.items():
        idx = [i for i in range(3) for _ in range(e[i])]
        a, b = idx
        if a == b:
            M[a][a] += 2 * c
        else:
            M[a][b] += c
            M[b][a] += c
    det = _sym_det3(M)
    if det == 0:
        return NodalShape(False, "tangent cone at O is degenerate", 0)
    return NodalShape(True, "node at O", det)
