import pytest
from hypothesis import given, strategies as st

from k3lab.lattice import (
    GramLattice2, LatVec, LatticeError, determinant, genus_of_class, inner, is_primitive, signature2,
)

L452 = GramLattice2(4, 5, 2)
H, C = LatVec(1, 0), LatVec(0, 1)
K, D, iD = LatVec(3, -1), LatVec(2, -1), LatVec(-2, 9)


def test_pairings_on_quartic_lattice():
    assert inner(L452, K, D) == 1
    assert inner(L452, K, iD) == 103
    assert inner(L452, H, H) == 4
    assert inner(L452, K, K) == 8


@pytest.mark.parametrize("gram,det", [("4 5 2", -17), ("6 6 2", -24), ("4 0 -2", -8)])
def test_determinant(gram, det):
    assert determinant(GramLattice2.parse(gram)) == det


def test_signature():
    assert signature2(L452) == (1, 1)
    assert signature2(GramLattice2(2, 0, 2)) == (2, 0)
    assert signature2(GramLattice2(-2, 0, -2)) == (0, 2)


def test_genus():
    assert genus_of_class(L452, C) == 2
    assert genus_of_class(GramLattice2(4, 0, -2), LatVec(0, 1)) == 0
    assert genus_of_class(GramLattice2(0, 1, 0), LatVec(1, 0)) == 1


def test_primitive():
    assert is_primitive(LatVec(3, -1))
    assert not is_primitive(LatVec(2, 4))
    assert is_primitive(LatVec(0, 1))
    with pytest.raises(LatticeError):
        is_primitive(LatVec(0, 0))


def test_rejects_bad_gram():
    with pytest.raises(LatticeError):
        GramLattice2(3, 0, 2)
    with pytest.raises(LatticeError):
        GramLattice2(2, 2, 2)
    with pytest.raises(LatticeError):
        GramLattice2.parse("4 5")
    assert str(GramLattice2.parse("[4 5 2]")) == "4 5 2"


small = st.integers(-50, 50)
evens = st.integers(-25, 25).map(lambda t: 2 * t)
vecs = st.builds(LatVec, small, small)


@st.composite
def lattices(draw):
    a, b, c = draw(evens), draw(small), draw(evens)
    if a * c == b * b:
        b += 1
    return GramLattice2(a, b, c)


@given(lattices(), vecs, vecs, vecs)
def test_bilinear_symmetric(L, x, y, z):
    assert inner(L, x, y) == inner(L, y, x)
    assert inner(L, x + z, y) == inner(L, x, y) + inner(L, z, y)
    assert inner(L, 3 * x, y) == 3 * inner(L, x, y)


@given(lattices(), st.integers(-6, 6), st.integers(-6, 6), st.integers(-6, 6), st.integers(-6, 6))
def test_det_invariant_under_unimodular_change(L, p, q, r, s):
    if abs(p * s - q * r) != 1:
        return
    assert L.transform(((p, q), (r, s))).det == L.det


@given(lattices(), vecs)
def test_genus_sign_and_signature_sum(L, d):
    assert sum(signature2(L)) == 2
    sq = L.square(d)
    assert (genus_of_class(L, d) < 0) == (sq <= -4)
