"""
A nodal quartic and the Segre quadric
=====================================

Projecting a quartic ``f4 + f3 w + f2 w^2`` from its node gives a double
plane branched along ``f3^2 - 4 f2 f4``.  Separately, a bihomogeneous form on
P^1 x P^1 transfers to a quartic on the quadric ``xw = yz``.
"""

from k3lab import FqContext, branch_sextic, load_fixture, nodal_shape_check, segre_transfer, singular_search
from k3lab.poly import reduce_mod_segre

N = load_fixture("Xnodal")
print("quartic:", N.equations[0])
print(nodal_shape_check(N.equations[0]))
print("singular points mod 11:", singular_search(N.equations, FqContext(11)))

B = branch_sextic(N.polys["f2"], N.polys["f3"], N.polys["f4"])
print("branch sextic has", len(B), "terms; x^6 coefficient", B.coefficient((6, 0, 0)))

###############################################################################
# The product of the two bihomogeneous forms stored with X4 lands on the
# quartic of X4, up to sign, once xw is rewritten as yz everywhere.

X4 = load_fixture("X4")
g = X4.polys["segre_f"] * X4.polys["segre_g"]
F, rel = segre_transfer(g)
print("relation:", rel)
print("transfer:", F)
print("matches -X4:", F == -reduce_mod_segre(X4.equations[0]))
