"""Frobenius characteristic polynomials on H^2 of a K3 reduction.

Conventions.  Eigenvalues are untwisted (absolute value p).  A polynomial
``W(T) = prod (T - lambda_j)`` of degree 22 is stored as its coefficient list
``c_0 = 1, c_1, ..., c_22`` with ``c_i`` the coefficient of ``T^(22-i)``.  The
eigenvalue multiset is stable under ``lambda -> p^2/lambda`` so
``c_(22-i) = eps * p^(22-2i) * c_i`` with ``eps = c_22 / p^22 = +-1``.
Point counts and traces are tied by ``N_k = 1 + p^(2k) + a_k``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from sympy import Poly, Symbol, cyclotomic_poly, totient
from sympy.ntheory import factorint

__all__ = [
    "ZetaError",
    "Inconsistent",
    "AmbiguousSign",
    "Underdetermined",
    "NonIntegral",
    "CountVector",
    "WeilPolynomial",
    "traces_from_counts",
    "newton_charpoly",
    "power_sums",
    "counts_from_weil",
    "apply_functional_equation",
    "picard_upper_bound",
    "compare_reductions",
    "scaled_cyclotomic",
    "poly_mul",
    "poly_divmod",
    "linear_power",
]

DEGREE = 22
DEFAULT_ORDER_BOUND = 66


class ZetaError(ValueError):
    pass


class NonIntegral(ZetaError):
    """Newton's identities produced a non-integer: the counts are inconsistent."""


class Inconsistent(ZetaError):
    """No sign of the functional equation fits the known coefficients."""


class AmbiguousSign(ZetaError):
    """Both signs fit; more coefficients are needed to decide."""


class Underdetermined(ZetaError):
    """Some coefficients are not fixed by the data."""

    def __init__(self, msg, free, partial):
        super().__init__(msg)
        self.free = free
        self.partial = partial


# -- integer polynomial helpers (high coefficient first) ---------------------


def poly_mul(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def poly_divmod(a, b):
    """Division by a monic ``b`` over the integers."""
    if b[0] != 1:
        raise ZetaError("divisor must be monic")
    a = list(a)
    n = len(a) - len(b) + 1
    if n <= 0:
        return [0], a
    quot = []
    for i in range(n):
        c = a[i]
        quot.append(c)
        if c:
            for j in range(1, len(b)):
                a[i + j] -= c * b[j]
    return quot, a[n:]


def linear_power(root: int, r: int):
    """Coefficients of ``(T - root)^r``."""
    out = [1]
    for _ in range(r):
        out = poly_mul(out, [1, -root])
    return out


def scaled_cyclotomic(n: int, p: int):
    """``p^phi(n) * Phi_n(T/p)``: monic, its roots are p times the primitive n-th roots of unity."""
    coeffs = [int(c) for c in Poly(cyclotomic_poly(n, Symbol("T")), Symbol("T")).all_coeffs()]
    return [c * p**i for i, c in enumerate(coeffs)]


# -- counts and traces ---------------------------------------------------------


@dataclass(frozen=True)
class CountVector:
    p: int
    counts: tuple[int, ...]
    double_cover: bool = True

    def __post_init__(self):
        for k, N in enumerate(self.counts, start=1):
            q = self.p**k
            if N < 0:
                raise ZetaError(f"N_{k} is negative")
            if self.double_cover and N > 2 * (q * q + q + 1):
                raise ZetaError(f"N_{k} = {N} exceeds twice the size of P^2(F_{q})")


def traces_from_counts(cv: CountVector) -> list[int]:
    return [N - 1 - cv.p ** (2 * k) for k, N in enumerate(cv.counts, start=1)]


def newton_charpoly(traces, degree: int = DEGREE) -> list[int]:
    """``[1, c_1, ..., c_m]`` from the power sums ``s_1..s_m`` of the eigenvalues."""
    m = len(traces)
    if m > degree:
        raise ZetaError(f"{m} traces given for degree {degree}")
    c = [1]
    for i in range(1, m + 1):
        s = -sum(c[i - j] * traces[j - 1] for j in range(1, i + 1))
        if s % i:
            raise NonIntegral(f"coefficient c_{i} = {s}/{i} is not an integer")
        c.append(s // i)
    return c


def power_sums(coeffs, m: int) -> list[int]:
    """Inverse of :func:`newton_charpoly`: ``s_1..s_m`` from ``c_0..c_n`` (c_0 = 1)."""
    n = len(coeffs) - 1
    c = lambda i: coeffs[i] if i <= n else 0
    s = []
    for k in range(1, m + 1):
        val = -k * c(k) - sum(c(j) * s[k - j - 1] for j in range(1, k))
        s.append(val)
    return s


def counts_from_weil(W: "WeilPolynomial", m: int) -> CountVector:
    sums = power_sums(list(W.coeffs), m)
    return CountVector(W.p, tuple(1 + W.p ** (2 * k) + s for k, s in enumerate(sums, start=1)))


# -- the functional equation -----------------------------------------------------


@dataclass(frozen=True)
class WeilPolynomial:
    p: int
    coeffs: tuple[int, ...]
    known_algebraic_rank: int = field(default=0, compare=False)
    sign: int = field(default=0, compare=False)

    def __post_init__(self):
        c = self.coeffs
        if len(c) != DEGREE + 1 or c[0] != 1:
            raise ZetaError("expected a monic polynomial of degree 22")
        eps = _sign_of(c, self.p, DEGREE)
        if eps is None:
            raise Inconsistent("coefficients do not satisfy the functional equation")
        object.__setattr__(self, "sign", eps)

    @classmethod
    def from_factors(cls, p: int, factors, known_algebraic_rank: int = 0) -> "WeilPolynomial":
        out = [1]
        for f in factors:
            out = poly_mul(out, f)
        return cls(p, tuple(out), known_algebraic_rank)

    def __call__(self, T: int) -> int:
        v = 0
        for c in self.coeffs:
            v = v * T + c
        return v


def _sign_of(c, p, D):
    for eps in (1, -1):
        if all(c[D - i] == eps * p ** (D - 2 * i) * c[i] for i in range(D // 2 + 1)):
            return eps
    return None


def _fill(known, p, eps, D):
    full = list(known) + [None] * (D + 1 - len(known))
    for i in range(D // 2 + 1):
        j = D - i
        if full[i] is not None:
            v = eps * p ** (D - 2 * i) * full[i]
            if full[j] is None:
                full[j] = v
            elif full[j] != v:
                return None
        elif full[j] is not None:
            num = full[j]
            den = eps * p ** (D - 2 * i)
            if num % den:
                return None
            full[i] = num // den
    if D % 2 == 0:
        mid = D // 2
        if eps == -1:
            if full[mid] not in (None, 0):
                return None
            full[mid] = 0
    return full


def _complete(known, p, sign, D):
    signs = (sign,) if sign else (1, -1)
    fits = {eps: f for eps in signs if (f := _fill(known, p, eps, D)) is not None}
    if not fits:
        raise Inconsistent("the known coefficients fit neither sign of the functional equation")
    free = sorted({i for f in fits.values() for i, v in enumerate(f) if v is None})
    if free:
        eps, full = next(iter(fits.items()))
        raise Underdetermined(f"coefficients {free} are not determined", free, full)
    if len(fits) > 1 and fits[1] != fits[-1]:
        raise AmbiguousSign("both signs fit the known coefficients")
    return next(iter(fits.items()))


def _series_quotient(known, root, r):
    """Leading coefficients of ``known / (T - root)^r`` as a power series in 1/T."""
    q = list(known)
    for _ in range(r):
        out = []
        prev = 0
        for c in q:
            prev = c + root * prev
            out.append(prev)
        q = out
    return q


def apply_functional_equation(partial, p: int, sign: int | None = None,
                              degree: int = DEGREE, known_algebraic_rank: int = 0) -> WeilPolynomial:
    """Complete ``[c_0, ..., c_m]`` to a degree-22 Weil polynomial.

    With ``known_algebraic_rank = r`` the factor ``(T - p)^r`` is removed
    first, which leaves fewer unknowns.  Raises :class:`Inconsistent` when no
    sign fits, :class:`AmbiguousSign` when both do with different results and
    :class:`Underdetermined` (carrying the free indices) when data is short.
    """
    if degree != DEGREE:
        raise ZetaError("only degree 22 is supported")
    if not partial or partial[0] != 1:
        raise ZetaError("coefficient list must start with the leading 1")
    if len(partial) > degree + 1:
        raise ZetaError("too many coefficients")
    r = known_algebraic_rank
    if sign not in (None, 1, -1):
        raise ZetaError("sign must be +1, -1 or None")
    if r:
        if len(partial) == degree + 1:
            quot, rem = poly_divmod(partial, linear_power(p, r))
            if any(rem):
                raise ZetaError(f"(T - {p})^{r} does not divide the polynomial")
            known = quot
        else:
            known = _series_quotient(partial, p, r)[: degree - r + 1]
        # the sign of the quotient picks up (-1)^r from the removed roots
        qsign = None if sign is None else sign * (-1) ** r
        _, full_q = _complete(known, p, qsign, degree - r)
        full = poly_mul(full_q, linear_power(p, r))
    else:
        _, full = _complete(partial, p, sign, degree)
    W = WeilPolynomial(p, tuple(full), r)
    if sign is not None and W.sign != sign:
        raise Inconsistent("completed polynomial has the other sign")
    return W


# -- Picard bounds -----------------------------------------------------------------


def picard_upper_bound(W: WeilPolynomial, cyclotomic_order_bound: int = DEFAULT_ORDER_BOUND) -> int:
    """Number of eigenvalues equal to p times a root of unity of order at most the bound."""
    rest = list(W.coeffs)
    total = 0
    for n in range(1, cyclotomic_order_bound + 1):
        phi = int(totient(n))
        if phi > len(rest) - 1:
            continue
        P = scaled_cyclotomic(n, W.p)
        while len(rest) - 1 >= phi:
            quot, rem = poly_divmod(rest, P)
            if any(rem):
                break
            rest = quot
            total += phi
    return total


def _squarefree(d: int) -> bool:
    return d != 0 and all(e == 1 for e in factorint(abs(d)).values())


def compare_reductions(r1: int, d1: int, r2: int, d2: int) -> int:
    """Upper bound on the geometric Picard number from two good reductions.

    Square classes are given by squarefree representatives.  Equal ranks with
    different discriminant square classes lower the bound by one.
    """
    if not (_squarefree(d1) and _squarefree(d2)):
        raise ZetaError("square classes must be given by squarefree integers")
    if r1 == r2 and d1 != d2:
        return r1 - 1
    return min(r1, r2)
