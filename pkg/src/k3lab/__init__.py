"""Computational toolkit for K3 surfaces with Picard number two.

Rank-2 lattice arithmetic, binary quadratic forms, Weyl chamber descent,
exact polynomials, finite-field point counting and Frobenius polynomials.
"""

from .chambers import (
    NODAL_LATTICE, NODAL_WALLS, AmpleWitness, FixedLocus, NoSolution, WallSet, ample_search_2d,
    chamber_status, involution_pullback, is_ample_nodal, nikulin_bound, reduce_to_ample, reflect,
    roots, verify_genus2_ample,
)
from .fields import FqContext, ProjPoint
from .fixtures import SurfaceFixture, load_fixture
from .forms import (
    BinaryForm, ObstructionCert, PellSolution, RepWitness, Unknown, d_list, no_minus_two_for_family,
    qr2_mod, represents, solve_pell_like, square_disc_factor,
)
from .geometry import (
    containment_check, count_double_cover, count_hypersurface_p3, double_cover_map_check,
    involution_check, singular_search, smoothness_scan, variety_points,
)
from .lattice import GramLattice2, LatVec, determinant, genus_of_class, inner, is_primitive, signature2
from .poly import MultiPoly, PolyRing, branch_sextic, nodal_shape_check, segre_transfer
from .report import ClaimReport, h2d_table, reproduce_all
from .zeta import (
    CountVector, WeilPolynomial, apply_functional_equation, compare_reductions, counts_from_weil,
    newton_charpoly, picard_upper_bound, traces_from_counts,
)

__version__ = "0.1.0"
