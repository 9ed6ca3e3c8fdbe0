"""
A quartic surface over F_11
===========================

The fixture X4 is a smooth quartic with a degree-9 involution and a double
cover of the plane.  Reducing modulo 11 turns every claim about it into a
finite check over the points of X4(F_11).
"""

from k3lab import (
    FqContext, containment_check, count_hypersurface_p3, double_cover_map_check, involution_check,
    load_fixture, smoothness_scan,
)

X4 = load_fixture("X4")
ctx = FqContext(11)
F = X4.equations[0]
print("X4:", F)
print("#X4(F_11) =", count_hypersurface_p3(F, ctx))

###############################################################################
# Two curves on the surface.
for name in ("C", "D"):
    print(name, containment_check(X4.curves[name], X4.equations, ctx))

###############################################################################
# The involution preserves the surface and squares to the identity away from
# its base locus; points on the base locus are skipped, not silently dropped.
print("involution ", involution_check(X4.maps["iota"], F, ctx).as_dict())
print("double cover", double_cover_map_check(X4.maps["cover"], X4.polys["branch"], F, ctx).as_dict())

###############################################################################
# No singular point over F_11 or F_121.
print(smoothness_scan(X4.equations, 11, 2).summary())

# X6 by contrast has bad reduction at 11.
X6 = load_fixture("X6")
for p in (7, 11, 13):
    print("X6 p =", p, ":", smoothness_scan(X6.equations, p, 1).summary())
