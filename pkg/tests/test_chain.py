import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from proxkit.chain import (
    ChainLikeFrame,
    El,
    ElementFamily,
    Segment,
    Tail,
    build_chain_frame,
    lim,
    succ,
)
from proxkit.errors import InvalidParameter, NotDirected


def test_element_order_is_lexicographic():
    assert El(0, 3) < El(0, 4) < El(1, 0) < El(2, 7)


def test_build_chain_frame_shape():
    f = build_chain_frame(2)
    assert [s.kind for s in f.segments] == ["omega", "point", "omega", "point"]
    assert f.bot == El(0, 0)
    assert f.top == El(3, 0)
    assert f.label(succ(f, 1, 4)) == "S1.4"
    assert f.label(lim(f, 2)) == "L2"


def test_limits_and_successors():
    f = build_chain_frame(2)
    assert f.limits() == [lim(f, 1), lim(f, 2)]
    assert f.is_limit(lim(f, 1)) and not f.is_limit(succ(f, 0, 0))
    assert f.successor_of(succ(f, 0, 3)) == succ(f, 0, 4)
    assert f.successor_of(lim(f, 1)) == succ(f, 1, 0)
    assert f.successor_of(f.top) is None


def test_way_below_excludes_limit_reflexivity():
    f = build_chain_frame(1)
    a, L = succ(f, 0, 2), lim(f, 1)
    assert f.way_below(a, a)
    assert f.way_below(a, L)
    assert not f.way_below(L, L)


def test_frame_needs_point_top():
    with pytest.raises(InvalidParameter):
        ChainLikeFrame((Segment("omega", "S"),))
    with pytest.raises(InvalidParameter):
        build_chain_frame(0)


def test_membership_checks():
    f = build_chain_frame(1)
    assert f.contains(El(0, 99)) and f.contains(El(1, 0))
    assert not f.contains(El(1, 1)) and not f.contains(El(2, 0))
    with pytest.raises(InvalidParameter):
        f.check(El(5, 0))


def test_family_sup_affine_not_attained():
    f = build_chain_frame(1)
    fam = ElementFamily(f, Tail.affine(0, 2, 1))
    assert fam.sup() == lim(f, 1)
    assert not fam.attained()


def test_family_sup_constant_attained():
    f = build_chain_frame(1)
    fam = ElementFamily(f, Tail.constant(succ(f, 0, 5)), ((0, succ(f, 0, 1)),))
    assert fam.sup() == succ(f, 0, 5)
    assert fam.attained()


def test_family_rejects_non_monotone():
    f = build_chain_frame(1)
    with pytest.raises(NotDirected):
        ElementFamily(f, Tail.affine(0, 1, 0), ((1, succ(f, 0, 9)),))


def test_affine_tail_needs_positive_slope():
    with pytest.raises(InvalidParameter):
        Tail.affine(0, 0, 3)


@settings(max_examples=80, deadline=None)
@given(st.integers(1, 3), st.integers(1, 3), st.integers(0, 5),
       st.integers(0, 30))
def test_family_values_bounded_by_sup(k, a, b, n):
    f = build_chain_frame(k)
    fam = ElementFamily(f, Tail.affine(0, a, b))
    assert fam.value(n) < fam.sup() == lim(f, 1)


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 3), st.integers(0, 40), st.integers(0, 40))
def test_lattice_ops_agree_with_order(k, i, j):
    f = build_chain_frame(k)
    x, y = El(0, i), El(0, j)
    assert f.meet(x, y) == (x if i <= j else y)
    assert f.join(x, y) == (y if i <= j else x)
    assert f.leq(x, y) == (i <= j)
