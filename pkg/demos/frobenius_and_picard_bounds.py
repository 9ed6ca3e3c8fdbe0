"""
Frobenius polynomials and Picard bounds
=======================================

Point counts over F_p, F_p^2, ... determine the characteristic polynomial of
Frobenius through Newton's identities.  Its factors of the form
``p^phi(n) Phi_n(T/p)`` bound the geometric Picard number from above.
"""

import random

from k3lab import (
    CountVector, FqContext, WeilPolynomial, apply_functional_equation, compare_reductions,
    count_double_cover, counts_from_weil, load_fixture, newton_charpoly, picard_upper_bound,
    traces_from_counts,
)
from k3lab.zeta import Underdetermined, linear_power, scaled_cyclotomic

p = 29
rng = random.Random(1)
W = WeilPolynomial.from_factors(p, [linear_power(p, 2), scaled_cyclotomic(3, p)]
                                + [[1, -rng.randint(1, 40), p * p] for _ in range(9)])
print("planted polynomial, sign", W.sign, "Picard bound", picard_upper_bound(W))

###############################################################################
# Eleven counts, the first half of the coefficients, and the functional
# equation recover everything.

cv = counts_from_weil(W, 11)
coeffs = newton_charpoly(traces_from_counts(cv))
print("counts:", cv.counts[:4], "...")
print("recovered:", apply_functional_equation(coeffs, p, sign=W.sign) == W)

###############################################################################
# For the double plane X2 only the first counts are cheap.

X2 = load_fixture("X2")
counts = tuple(count_double_cover(X2.polys["sextic"], FqContext(5, k)) for k in (1, 2))
print("X2 counts over F_5, F_25:", counts)
try:
    apply_functional_equation(newton_charpoly(traces_from_counts(CountVector(5, counts))), 5, sign=1)
except Underdetermined as exc:
    print("still free:", exc.free)

# Two reductions of rank two with different discriminant square classes force rank one.
(_, r1, d1), (_, r2, d2) = X2.reductions
print("rho(X2) <=", compare_reductions(r1, d1, r2, d2))
