import random

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from k3lab.fields import FieldError, FqContext
from k3lab.geometry import (
    containment_check, count_double_cover, count_hypersurface, count_hypersurface_p3,
    double_cover_map_check, involution_check, projective_points, singular_search, smoothness_scan,
    variety_points,
)
from k3lab.naive import naive_count_double_cover, naive_count_hypersurface, naive_projective_points
from k3lab.poly import PolyError, PolyRing
from k3lab.report import random_form

R3, R4 = PolyRing("x y z"), PolyRing("x y z w")


@pytest.mark.parametrize("p,k,m", [(2, 1, 3), (3, 2, 2), (5, 1, 3), (3, 1, 1)])
def test_projective_points_order_and_size(p, k, m):
    ctx = FqContext(p, k)
    pts = np.concatenate(list(projective_points(ctx, m, chunk=7)))
    q = ctx.q
    assert len(pts) == (q ** (m + 1) - 1) // (q - 1)
    assert sorted(tuple(r) for r in pts.tolist()) == sorted(naive_projective_points(q, m + 1))


def test_plane_conic_count():
    # smooth conics have q + 1 points
    x, y, z = R3.gens
    for p, k in ((3, 1), (5, 2), (7, 1), (2, 2)):
        assert count_hypersurface(x * z - y ** 2, FqContext(p, k)) == p ** k + 1


def test_quadric_surface_count():
    x, y, z, w = R4.gens
    q = 11
    assert count_hypersurface_p3(x * w - y * z, FqContext(q)) == (q + 1) ** 2


def test_double_cover_small():
    x, y, z = R3.gens
    # w^2 = x^6: every point gives two square roots except where x = 0
    ctx = FqContext(5)
    assert count_double_cover(x ** 6, ctx) == naive_count_double_cover(x ** 6, 5)
    with pytest.raises(FieldError):
        count_double_cover(x ** 6, FqContext(2))


def test_known_counts(X2, X4):
    assert count_double_cover(X2.polys["sextic"], FqContext(5)) == 31
    assert count_hypersurface_p3(X4.equations[0], FqContext(11)) == 145


def test_variety_points_sorted(X4):
    pts = variety_points(X4.curves["C"], FqContext(11))
    assert len(pts) == 14
    assert [tuple(r) for r in pts.tolist()] == sorted(tuple(r) for r in pts.tolist())


def test_node_found(Xnodal):
    sing = singular_search(Xnodal.equations, FqContext(11))
    assert (0, 0, 0, 1) in [tuple(s) for s in sing]


def test_x4_smooth_at_11(X4):
    assert smoothness_scan(X4.equations, 11, 2).clean


def test_x6_bad_reduction_at_11(X6):
    rep = smoothness_scan(X6.equations, 11, 1)
    assert not rep.clean
    assert (1, 5, 3, 4, 9) in [tuple(s) for s in rep.singular[1]]
    assert smoothness_scan(X6.equations, 13, 1).clean
    # the same point checked with plain integers
    P = (1, 5, 3, 4, 9)
    assert all(F.eval(P) % 11 == 0 for F in X6.equations)
    J = [[d.eval(P) % 11 for d in F.partials()] for F in X6.equations]
    minors = [J[0][i] * J[1][j] - J[0][j] * J[1][i] for i in range(5) for j in range(i + 1, 5)]
    assert all(m % 11 == 0 for m in minors)


def test_cone_singular_at_vertex():
    x, y, z, w = R4.gens
    sing = singular_search([x * y - z ** 2], FqContext(5))
    assert [tuple(s) for s in sing] == [(0, 0, 0, 1)]


def test_containment(X4, X6):
    ctx = FqContext(11)
    c = containment_check(X4.curves["C"], X4.equations, ctx)
    assert c.contained and c.checked == 14
    assert containment_check(X4.curves["D"], X4.equations, ctx).checked == 12
    assert containment_check(X6.curves["C6"], X6.equations, FqContext(7)).checked == 5
    x, y, z, w = R4.gens
    bad = containment_check([x, y], [z * w + z ** 2], ctx)
    assert not bad.contained and bad.counterexample is not None


def test_involution_and_cover(X4):
    ctx = FqContext(11)
    rep = involution_check(X4.maps["iota"], X4.equations[0], ctx)
    assert (rep.checked, rep.skipped, rep.failures) == (124, 21, 0)
    rep = double_cover_map_check(X4.maps["cover"], X4.polys["branch"], X4.equations[0], ctx)
    assert (rep.checked, rep.skipped, rep.failures) == (133, 12, 0)


def test_involution_detects_wrong_map(X4):
    x, y, z, w = R4.gens
    bogus = list(X4.maps["iota"])
    bogus[0] = bogus[0] + x ** 9
    rep = involution_check(bogus, X4.equations[0], FqContext(11))
    assert rep.failures > 0 and not rep.passed
    with pytest.raises(PolyError):
        involution_check(X4.maps["iota"][:3], X4.equations[0], FqContext(11))


def test_workers_do_not_change_result(X4):
    ctx = FqContext(7, 2)
    F = X4.equations[0]
    assert count_hypersurface_p3(F, ctx, workers=3) == count_hypersurface_p3(F, ctx)


@settings(max_examples=30)
@given(st.sampled_from([(2, 1), (3, 1), (5, 1), (3, 2), (2, 2)]), st.integers(0, 10**6))
def test_quartic_counts_match_oracle(pk, seed):
    F = random_form(R4, 4, 6, random.Random(seed))
    assert count_hypersurface_p3(F, FqContext(*pk)) == naive_count_hypersurface(F, *pk)


@settings(max_examples=30)
@given(st.sampled_from([(3, 1), (5, 1), (7, 1), (3, 2)]), st.integers(0, 10**6))
def test_sextic_counts_match_oracle(pk, seed):
    f = random_form(R3, 6, 8, random.Random(seed))
    assert count_double_cover(f, FqContext(*pk)) == naive_count_double_cover(f, *pk)


@settings(max_examples=20)
@given(st.sampled_from([(3, 1), (5, 1), (2, 2)]), st.integers(0, 10**6), st.integers(1, 4))
def test_complete_intersection_points_satisfy_equations(pk, seed, deg):
    rng = random.Random(seed)
    eqs = [random_form(R4, 2, 5, rng), random_form(R4, deg, 5, rng)]
    ctx = FqContext(*pk)
    pts = variety_points(eqs, ctx)
    brute = [pt for pt in naive_projective_points(ctx.q, 4)
             if all(ctx.eval_poly(F, np.array([pt]))[0] == 0 for F in eqs)]
    assert [tuple(r) for r in pts.tolist()] == brute
