"""Point enumeration and point-level checks on projective varieties over F_q.

Varieties are enumerated by fibering over the last coordinate: for every
normalized prefix point of P^(n-1) the fiber equation in the last variable is
solved (closed form in degrees 1 and 2, Horner over all of F_q otherwise),
and the point ``(0 : ... : 0 : 1)`` is checked separately.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Iterator, Sequence

import numpy as np

from .fields import FieldError, FqContext, ProjPoint
from .poly import MultiPoly, PolyError

__all__ = [
    "projective_points",
    "variety_points",
    "count_hypersurface",
    "count_hypersurface_p3",
    "count_double_cover",
    "singular_search",
    "smoothness_scan",
    "SmoothnessReport",
    "Containment",
    "containment_check",
    "MapReport",
    "involution_check",
    "double_cover_map_check",
]

CHUNK = 1 << 15
_HORNER_CELLS = 1 << 22


def _ppm_size(q: int, m: int) -> int:
    return (q ** (m + 1) - 1) // (q - 1)


def projective_points(ctx: FqContext, m: int, chunk: int = CHUNK) -> Iterator[np.ndarray]:
    """Normalized points of P^m(F_q) in chunks, grouped by the position of the leading 1."""
    q = ctx.q
    for j in range(m + 1):
        free = m - j
        total = q**free
        powers = q ** np.arange(free - 1, -1, -1, dtype=np.int64)
        for start in range(0, total, chunk):
            idx = np.arange(start, min(total, start + chunk), dtype=np.int64)
            block = np.zeros((len(idx), m + 1), dtype=np.int64)
            block[:, j] = 1
            if free:
                block[:, j + 1:] = (idx[:, None] // powers) % q
            yield block


def _fiber_roots(ctx: FqContext, coefs: list[np.ndarray]):
    """Pairs ``(row, t)`` with ``sum coefs[j][row] t^j == 0``."""
    d = len(coefs) - 1
    N = len(coefs[0])
    rows_out, t_out = [], []
    closed = d == 1 or (d == 2 and ctx.p != 2)
    if closed:
        lead = coefs[d]
        gen = np.nonzero(lead != 0)[0]
        rest = np.nonzero(lead == 0)[0]
        if d == 1:
            t = ctx.neg(ctx.div(coefs[0][gen], lead[gen]))
            rows_out.append(gen)
            t_out.append(t)
        else:
            a, b, c = coefs[2][gen], coefs[1][gen], coefs[0][gen]
            four = ctx.from_int(4)
            disc = ctx.sub(ctx.mul(b, b), ctx.mul(four, ctx.mul(a, c)))
            ok = ctx.chi[disc] >= 0
            gen, a, b, disc = gen[ok], a[ok], b[ok], disc[ok]
            r = ctx.sqrt(disc)
            inv2a = ctx.inv(ctx.mul(ctx.from_int(2), a))
            nb = ctx.neg(b)
            rows_out.append(gen)
            t_out.append(ctx.mul(ctx.add(nb, r), inv2a))
            two = r != 0
            rows_out.append(gen[two])
            t_out.append(ctx.mul(ctx.sub(nb[two], r[two]), inv2a[two]))
    else:
        rest = np.arange(N)
    if len(rest):
        ts = ctx.elements()
        step = max(1, _HORNER_CELLS // ctx.q)
        for s in range(0, len(rest), step):
            rr = rest[s:s + step]
            val = np.broadcast_to(coefs[d][rr][:, None], (len(rr), ctx.q))
            for j in range(d - 1, -1, -1):
                val = ctx.add(ctx.mul(val, ts[None, :]), coefs[j][rr][:, None])
            ri, ti = np.nonzero(val == 0)
            rows_out.append(rr[ri])
            t_out.append(ts[ti])
    if not rows_out:
        return np.zeros(0, dtype=np.int64), np.zeros(0, dtype=np.int64)
    return np.concatenate(rows_out).astype(np.int64), np.concatenate(t_out).astype(np.int64)


def _check_system(eqs: Sequence[MultiPoly]):
    if not eqs:
        raise PolyError("empty system")
    ring = eqs[0].ring
    if any(F.ring != ring for F in eqs):
        raise PolyError("equations live in different rings")
    if ring.nvars < 2:
        raise PolyError("need at least two homogeneous coordinates")
    for F in eqs:
        if not F:
            raise PolyError("the zero polynomial does not define a hypersurface")
        if not F.is_homogeneous():
            raise PolyError(f"equation is not homogeneous: {F}")
    return ring


def _map_ordered(fn, items, workers: int):
    if workers <= 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))


def variety_points(eqs: Sequence[MultiPoly], ctx: FqContext, workers: int = 1) -> np.ndarray:
    """All normalized F_q-points of the common zero set, sorted lexicographically."""
    ring = _check_system(eqs)
    n = ring.nvars
    last = n - 1
    with_last = [F for F in eqs if F.degree_in(last) > 0]
    pivot = min(with_last, key=lambda F: (F.degree_in(last), len(F))) if with_last else None
    others = [F for F in eqs if F is not pivot]
    coef_polys = pivot.coefficients_in(last) if pivot is not None else None

    def work(prefix):
        ext = np.hstack([prefix, np.zeros((len(prefix), 1), dtype=np.int64)])
        if pivot is None:
            ok = np.ones(len(prefix), dtype=bool)
            for F in eqs:
                ok &= ctx.eval_poly(F, ext) == 0
            rows = np.repeat(np.nonzero(ok)[0], ctx.q)
            ts = np.tile(ctx.elements(), int(ok.sum()))
        else:
            coefs = [ctx.eval_poly(c, ext) for c in coef_polys]
            rows, ts = _fiber_roots(ctx, coefs)
        pts = np.hstack([prefix[rows], ts[:, None]])
        keep = np.ones(len(pts), dtype=bool)
        for F in others:
            if len(pts):
                keep &= ctx.eval_poly(F, pts) == 0
        return pts[keep]

    parts = _map_ordered(work, list(projective_points(ctx, n - 2)), workers)
    apex = np.zeros((1, n), dtype=np.int64)
    apex[0, last] = 1
    if all(ctx.eval_poly(F, apex)[0] == 0 for F in eqs):
        parts.append(apex)
    pts = np.concatenate(parts) if parts else np.zeros((0, n), dtype=np.int64)
    if len(pts):
        pts = pts[np.lexsort(pts.T[::-1])]
    return pts


def count_hypersurface(F: MultiPoly, ctx: FqContext, workers: int = 1) -> int:
    return len(variety_points([F], ctx, workers))


def count_hypersurface_p3(F: MultiPoly, ctx: FqContext, workers: int = 1) -> int:
    """Number of F_q-points of the surface ``F = 0`` in P^3."""
    if F.ring.nvars != 4:
        raise PolyError("expected a form in four variables")
    return count_hypersurface(F, ctx, workers)


def count_double_cover(f: MultiPoly, ctx: FqContext, workers: int = 1) -> int:
    """Points of ``w^2 = f(x, y, z)`` in P(1,1,1,3): the sum of ``1 + chi(f(P))`` over P^2."""
    if ctx.p == 2:
        raise FieldError("double covers w^2 = f are not separable in characteristic 2")
    if f.ring.nvars != 3 or not f.is_homogeneous(6):
        raise PolyError("expected a sextic form in three variables")

    def work(block):
        vals = ctx.eval_poly(f, block)
        return len(block) + int(ctx.chi[vals].sum())

    return sum(_map_ordered(work, list(projective_points(ctx, 2)), workers))


def _rank_deficient(ctx: FqContext, J: np.ndarray) -> np.ndarray:
    """Rows of ``J`` (shape ``N x r x n``) whose ``r x n`` matrix has rank below r."""
    N, r, n = J.shape
    if r == 1:
        return (J[:, 0, :] == 0).all(axis=1)
    if r == 2:
        bad = np.ones(N, dtype=bool)
        for i in range(n):
            for j in range(i + 1, n):
                m = ctx.sub(ctx.mul(J[:, 0, i], J[:, 1, j]), ctx.mul(J[:, 0, j], J[:, 1, i]))
                bad &= m == 0
        return bad
    out = np.zeros(N, dtype=bool)
    for idx in range(N):
        M = [list(map(int, row)) for row in J[idx]]
        rank, col = 0, 0
        while rank < r and col < n:
            piv = next((i for i in range(rank, r) if M[i][col]), None)
            if piv is None:
                col += 1
                continue
            M[rank], M[piv] = M[piv], M[rank]
            inv = int(ctx.inv(M[rank][col]))
            M[rank] = [int(ctx.mul(inv, v)) for v in M[rank]]
            for i in range(r):
                if i != rank and M[i][col]:
                    f = M[i][col]
                    M[i] = [int(ctx.sub(a, ctx.mul(f, b))) for a, b in zip(M[i], M[rank])]
            rank += 1
            col += 1
        out[idx] = rank < r
    return out


def singular_search(eqs: Sequence[MultiPoly], ctx: FqContext, workers: int = 1) -> list[ProjPoint]:
    """F_q-points of ``V(eqs)`` where the Jacobian has rank below ``len(eqs)``.

    For a hypersurface this is the common zero locus of F and its partials;
    for a complete intersection of two forms it is the vanishing of all 2x2
    minors.
    """
    pts = variety_points(eqs, ctx, workers)
    if not len(pts):
        return []
    J = np.stack([np.stack([ctx.eval_poly(d, pts) for d in F.partials()], axis=1) for F in eqs], axis=1)
    bad = _rank_deficient(ctx, J)
    return [ProjPoint(row) for row in pts[bad]]


@dataclass(frozen=True)
class SmoothnessReport:
    p: int
    max_k: int
    singular: dict = field(default_factory=dict)  # k -> list of ProjPoint

    @property
    def clean(self) -> bool:
        return not any(self.singular.values())

    def summary(self) -> str:
        if self.clean:
            return f"no singular point found up to F_{self.p}^{self.max_k}"
        k = min(k for k, v in self.singular.items() if v)
        return f"singular point over F_{self.p}^{k}: {self.singular[k][0]}"


def smoothness_scan(eqs: Sequence[MultiPoly], p: int, max_k: int = 2, workers: int = 1) -> SmoothnessReport:
    """Search for singular points over F_p, ..., F_{p^max_k}.  A clean scan is not a proof of smoothness."""
    found = {k: singular_search(eqs, FqContext(p, k), workers) for k in range(1, max_k + 1)}
    return SmoothnessReport(p, max_k, found)


@dataclass(frozen=True)
class Containment:
    contained: bool
    checked: int
    counterexample: ProjPoint | None = None

    def as_dict(self):
        return {"contained": self.contained, "checked": self.checked,
                "counterexample": list(self.counterexample) if self.counterexample else None}


def containment_check(curve_eqs: Sequence[MultiPoly], surface_eqs: Sequence[MultiPoly],
                      ctx: FqContext) -> Containment:
    """Whether every F_q-point on the curve satisfies the surface equations."""
    if curve_eqs[0].ring != surface_eqs[0].ring:
        raise PolyError("curve and surface live in different ambient spaces")
    pts = variety_points(curve_eqs, ctx)
    ok = np.ones(len(pts), dtype=bool)
    for F in surface_eqs:
        if len(pts):
            ok &= ctx.eval_poly(F, pts) == 0
    if ok.all():
        return Containment(True, len(pts))
    return Containment(False, len(pts), ProjPoint(pts[np.argmin(ok)]))


@dataclass(frozen=True)
class MapReport:
    checked: int
    skipped: int
    failures: int
    first_failure: ProjPoint | None = None

    @property
    def passed(self) -> bool:
        return self.failures == 0

    def as_dict(self):
        return {"checked": self.checked, "skipped": self.skipped, "failures": self.failures,
                "first_failure": list(self.first_failure) if self.first_failure else None,
                "status": "pass" if self.passed else "fail"}


def _apply(ctx, maps, pts):
    return np.stack([ctx.eval_poly(m, pts) for m in maps], axis=1)


def involution_check(maps: Sequence[MultiPoly], surface: MultiPoly, ctx: FqContext) -> MapReport:
    """Check that ``maps`` send the surface into itself and square to the identity.

    Points where the map (or its second application) has all coordinates zero
    are skipped and counted.
    """
    if len({m.degree for m in maps}) != 1 or len(maps) != surface.ring.nvars:
        raise PolyError("need one map component per coordinate, all of the same degree")
    pts = variety_points([surface], ctx)
    img = _apply(ctx, maps, pts)
    base = (img == 0).all(axis=1)
    P, Q = pts[~base], ctx.normalize(img[~base]) if (~base).any() else img[:0]
    on = ctx.eval_poly(surface, Q) == 0 if len(Q) else np.zeros(0, dtype=bool)
    img2 = _apply(ctx, maps, Q) if len(Q) else img[:0]
    base2 = (img2 == 0).all(axis=1)
    back = np.zeros(len(Q), dtype=bool)
    if (~base2).any():
        back[~base2] = (ctx.normalize(img2[~base2]) == P[~base2]).all(axis=1)
    fail = ~on | (~base2 & ~back)
    skipped = int(base.sum() + (base2 & on).sum())
    first = ProjPoint(P[np.argmax(fail)]) if fail.any() else None
    return MapReport(int(len(P) - (base2 & on).sum()), skipped, int(fail.sum()), first)


def double_cover_map_check(map3: Sequence[MultiPoly], branch: MultiPoly, surface: MultiPoly,
                           ctx: FqContext) -> MapReport:
    """Every surface point off the base locus must land where the branch form is a square or zero."""
    if len(map3) != 3 or branch.ring.nvars != 3 or not branch.is_homogeneous(6):
        raise PolyError("expected a map to P^2 and a sextic branch form")
    pts = variety_points([surface], ctx)
    img = _apply(ctx, map3, pts)
    base = (img == 0).all(axis=1)
    vals = ctx.eval_poly(branch, img[~base]) if (~base).any() else np.zeros(0, dtype=np.int64)
    fail = ctx.chi[vals] == -1
    first = ProjPoint(pts[~base][np.argmax(fail)]) if fail.any() else None
    return MapReport(int((~base).sum()), int(base.sum()), int(fail.sum()), first)
