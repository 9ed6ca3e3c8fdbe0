import numpy as np
import pytest
from hypothesis import given, strategies as st

from k3lab.fields import FieldError, FqContext, ProjPoint, smallest_irreducible
from k3lab.naive import NaiveField
from k3lab.poly import PolyRing

SMALL = [(2, 1), (2, 3), (3, 1), (3, 2), (5, 2), (7, 1), (7, 2), (11, 1), (2, 6)]


def test_smallest_modulus():
    assert smallest_irreducible(2, 2) == (1, 1, 1)
    assert smallest_irreducible(3, 2) == (1, 0, 1)
    assert smallest_irreducible(5, 1) == (1, 0)


@pytest.mark.parametrize("p,k", SMALL)
def test_tables_match_schoolbook_field(p, k):
    F, N = FqContext(p, k), NaiveField(p, k)
    q = F.q
    a, b = np.meshgrid(np.arange(q), np.arange(q), indexing="ij")
    assert (F.mul(a, b) == np.array(N.mult)).all()
    assert (F.add(a, b) == np.array(N.addt)).all()


@pytest.mark.parametrize("p,k", SMALL)
def test_log_exp_bijection(p, k):
    F = FqContext(p, k)
    nz = np.arange(1, F.q)
    assert (F.exp[F.log[nz]] == nz).all()
    assert (F.mul(nz, F.inv(nz)) == 1).all()
    assert sorted(F.exp[: F.q - 1].tolist()) == nz.tolist()


@pytest.mark.parametrize("p,k", [(3, 1), (5, 2), (7, 1), (13, 1), (3, 3)])
def test_character_and_sqrt(p, k):
    F = FqContext(p, k)
    els = F.elements()
    sq = set(F.mul(els, els).tolist())
    assert sum(F.chi[1:]) == 0
    for a in range(F.q):
        assert (a in sq) == bool(F.is_square(a))
        if a in sq:
            r = int(F.sqrt(a))
            assert int(F.mul(r, r)) == a


def test_bad_parameters():
    with pytest.raises(FieldError):
        FqContext(4)
    with pytest.raises(FieldError):
        FqContext(2, 13)
    with pytest.raises(FieldError):
        FqContext(5, 9)
    with pytest.raises(ZeroDivisionError):
        FqContext(5).inv(0)


def test_projective_point_normalization():
    ctx = FqContext(7)
    assert ProjPoint((0, 3, 6), ctx) == (0, 1, 2)
    with pytest.raises((FieldError, ValueError)):
        ProjPoint((0, 0, 0))


@given(st.sampled_from(SMALL), st.data())
def test_field_axioms(pk, data):
    F = FqContext(*pk)
    el = st.integers(0, F.q - 1)
    a, b, c = data.draw(el), data.draw(el), data.draw(el)
    assert F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))
    assert F.add(a, F.neg(a)) == 0
    assert F.mul(F.mul(a, b), c) == F.mul(a, F.mul(b, c))
    assert F.power(a, F.q) == a


@given(st.sampled_from([(3, 2), (5, 1), (7, 2)]), st.data())
def test_eval_poly_matches_schoolbook(pk, data):
    R = PolyRing("x y z w")
    F, N = FqContext(*pk), NaiveField(*pk)
    terms = data.draw(st.dictionaries(st.tuples(*[st.integers(0, 3)] * 4), st.integers(-9, 9), max_size=6))
    f = sum((c * _mono(R, e) for e, c in terms.items()), R.zero())
    pts = data.draw(st.lists(st.tuples(*[st.integers(0, F.q - 1)] * 4), min_size=1, max_size=10))
    got = F.eval_poly(f, np.array(pts))
    assert got.tolist() == [N.eval(f, pt) for pt in pts]


def _mono(R, e):
    out = R.const(1)
    for g, k in zip(R.gens, e):
        out = out * g ** k
    return out
