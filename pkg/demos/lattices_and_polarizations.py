"""
Rank-two lattices and polarizations
===================================

A K3 surface of Picard number two has an even hyperbolic lattice ``[a b c]``.
We compute with the quartic lattice ``[4 5 2]``, ask which integers its form
represents, and find ample classes on the nodal lattice ``[4 0 -2]``.
"""

from k3lab import (
    BinaryForm, GramLattice2, LatVec, ample_search_2d, d_list, determinant, h2d_table, inner,
    represents,
)

L = GramLattice2(4, 5, 2)
H, C = LatVec(1, 0), LatVec(0, 1)
K = 3 * H - C
print("det", determinant(L), " K^2 =", inner(L, K, K))

# The form 4x^2 + 10xy + 2y^2 never takes the value 6: a congruence proves it.
cert = represents(BinaryForm.from_lattice(L), 6)
print(cert.kind, "certificate modulo", cert.modulus, "replays:", cert.replay())

# A value it does take comes back with a witness.
print(represents(BinaryForm.from_lattice(L), -2))

###############################################################################
# Ample classes of square 2d on the nodal lattice exist exactly when 2 is a
# square modulo d.

print("d with 2 a square mod d:", d_list(60))
for d in (7, 14, 17, 5):
    print(d, ample_search_2d(d))

###############################################################################
# The resulting table of minimal Picard numbers.

for row in h2d_table(20):
    print(row)
