import pytest
from hypothesis import given, strategies as st

from k3lab.chambers import (
    NODAL_LATTICE as L, NODAL_WALLS as W, AmpleWitness, Ample, FixedLocus, NonRoot, NoSolution,
    RootObstruction, StepLimit, apply_word, ample_search_2d, chamber_status, involution_pullback,
    is_ample_nodal, nikulin_bound, reduce_to_ample, reflect, roots, verify_genus2_ample,
)
from k3lab.forms import d_list
from k3lab.lattice import GramLattice2, LatVec, LatticeError, is_primitive

E, N = LatVec(0, 1), LatVec(2, -3)


def test_walls_are_roots():
    assert L.square(E) == L.square(N) == -2
    with pytest.raises(NonRoot):
        reflect(L, LatVec(1, 0), LatVec(1, 1))


def test_reduce_from_outside():
    # H + E pairs negatively with E
    v, word = reduce_to_ample(W, LatVec(1, 1))
    assert v == LatVec(1, -1) and word == (0,)
    assert chamber_status(W, v).ample
    assert reduce_to_ample(W, LatVec(1, -1)) == (LatVec(1, -1), ())


def test_reduce_flips_sign_first():
    v, word = reduce_to_ample(W, LatVec(-1, 1))
    assert word[0] == -1 and apply_word(W, word, LatVec(-1, 1)) == v


def test_reduce_rejects_nonpositive():
    with pytest.raises(LatticeError):
        reduce_to_ample(W, E)


def test_step_limit():
    with pytest.raises(StepLimit):
        reduce_to_ample(W, LatVec(100, 140), step_limit=1)


def test_boundary_class_not_ample():
    # 3H - 4E is orthogonal to N
    st_ = chamber_status(W, LatVec(3, -4))
    assert st_.closure and not st_.ample


def test_ample_search_over_100():
    residues = set(d_list(100))
    for d in range(3, 101):
        r = ample_search_2d(d)
        if d in residues:
            assert isinstance(r, AmpleWitness)
            assert L.square(r.vector) == 2 * d and r.square == 2 * d
            assert is_primitive(r.vector) and is_ample_nodal(r.x0, r.y0)
        else:
            assert isinstance(r, NoSolution)
    assert ample_search_2d(7).as_dict()["witness"] == [2, 1]
    with pytest.raises(ValueError):
        ample_search_2d(2)


def test_imprimitive_only():
    # 2 is not a square mod 8
    assert ample_search_2d(8).reason in ("no_solution", "no_primitive_solution")


def test_roots_box_and_pell_agree():
    for gram in ("4 0 -2", "4 5 2", "2 1 -2", "6 6 2"):
        Lg = GramLattice2.parse(gram)
        box = set(roots(Lg, 60))
        pell = roots(Lg, 0, method="pell")
        for r in pell:
            assert Lg.square(r) == -2
        # every short root is a unit multiple of a listed one, so the small ones agree
        small = {r for r in box if abs(r.u) + abs(r.v) <= 6}
        assert small <= set(pell) | box
    assert roots(GramLattice2(2, 3, 4), 10, method="pell") == roots(GramLattice2(2, 3, 4), 10)
    with pytest.raises(LatticeError):
        roots(GramLattice2(2, 0, 2), 5)


def test_involution_pullback():
    for e in (5, 6, 9, 12):
        M = involution_pullback(e)
        Lg = GramLattice2(4, e, 2)
        assert Lg.transform(M) == Lg
        (a, _), (b, _) = M
        img = LatVec(a, b)
        assert Lg.transform(M) == Lg and img != LatVec(1, 0)
    assert involution_pullback(5) == ((-1, 0), (5, 1))
    assert involution_pullback(9) == ((-1, 0), (9, 1))


def test_genus2_ample():
    assert verify_genus2_ample(5) == Ample(5)
    assert isinstance(verify_genus2_ample(3), RootObstruction)


def test_nikulin():
    assert nikulin_bound(FixedLocus("symplectic")) == 9
    assert nikulin_bound(FixedLocus("nonsymplectic_empty")) == 10
    assert nikulin_bound(FixedLocus("nonsymplectic_curves", p_a=2, k=1)) == 10
    with pytest.raises(ValueError):
        FixedLocus("bogus")


coords = st.integers(-10**6, 10**6)


@given(coords, coords, coords, coords, st.sampled_from([E, N]))
def test_reflection_isometry_involution(a, b, c, d, delta):
    x, y = LatVec(a, b), LatVec(c, d)
    rx, ry = reflect(L, delta, x), reflect(L, delta, y)
    assert L.inner(rx, ry) == L.inner(x, y)
    assert reflect(L, delta, rx) == x


@given(st.integers(-300, 300), st.integers(-300, 300))
def test_reduce_lands_in_closure(u, v):
    x = LatVec(u, v)
    if L.square(x) <= 0:
        return
    r, word = reduce_to_ample(W, x)
    assert chamber_status(W, r).closure
    assert L.square(r) == L.square(x)
    assert apply_word(W, word, x) == r
