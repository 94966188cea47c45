import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from proxkit.errors import (
    NoBounds,
    NotALattice,
    NotAPoset,
    NotATopology,
    NotDistributive,
)
from proxkit.finite import (
    build_finite_frame,
    downset_frame,
    hasse_dot,
    open_set_frame,
    product,
)


def diamond():
    return build_finite_frame(
        ["0", "a", "b", "1"], [("0", "a"), ("0", "b"), ("a", "1"), ("b", "1")]
    )


def test_diamond_tables():
    f = diamond()
    a, b = f.index("a"), f.index("b")
    assert f.meet(a, b) == f.bot
    assert f.join(a, b) == f.top
    assert f.leq(f.bot, a) and not f.leq(a, b)
    # pseudocomplement: a* = largest x with x /\ a = 0
    assert f.pseudo[a] == b
    assert f.pseudo[f.bot] == f.top
    assert f.pseudo[f.top] == f.bot


def test_canonical_element_order_is_stable():
    f1 = build_finite_frame(["1", "0"], [("0", "1")])
    f2 = build_finite_frame(["0", "1"], [("0", "1")])
    assert f1.names == f2.names == ("0", "1")


def test_transitive_closure_of_generating_pairs():
    f = build_finite_frame(["x", "y", "z"], [("x", "y"), ("y", "z")])
    assert f.leq(f.index("x"), f.index("z"))


def test_cycle_rejected():
    with pytest.raises(NotAPoset):
        build_finite_frame(["x", "y"], [("x", "y"), ("y", "x")])
    with pytest.raises(NotAPoset):
        build_finite_frame(["x", "x"], [])


def test_missing_bounds_rejected():
    with pytest.raises(NoBounds):
        build_finite_frame(["x", "y"], [])


def test_non_lattice_rejected():
    # two incomparable elements with two minimal upper bounds
    with pytest.raises(NotALattice):
        build_finite_frame(
            ["0", "a", "b", "c", "d", "1"],
            [("0", "a"), ("0", "b"), ("a", "c"), ("a", "d"), ("b", "c"),
             ("b", "d"), ("c", "1"), ("d", "1")],
        )


def test_n5_not_distributive():
    with pytest.raises(NotDistributive) as exc:
        build_finite_frame(
            ["0", "a", "b", "c", "1"],
            [("0", "a"), ("0", "c"), ("a", "b"), ("b", "1"), ("c", "1")],
        )
    assert len(exc.value.witness) == 3  # witness triple


def test_downset_frame_of_antichain_is_cube():
    f = downset_frame(["x", "y", "z"], [])
    assert f.n == 8
    assert f.names[0] == "{}"
    assert f.names[-1] == "{x,y,z}"


def test_open_set_frame_checks_closure():
    f = open_set_frame(["p", "q"], [[], ["p"], ["p", "q"]])
    assert f.n == 3
    with pytest.raises(NotATopology):
        open_set_frame(["p", "q"], [["p"], ["p", "q"]])  # missing empty set
    with pytest.raises(NotATopology):
        open_set_frame(["p", "q", "r"], [[], ["p"], ["q"], ["p", "q", "r"]])


def test_product_of_two_chains_is_grid():
    two = build_finite_frame(["0", "1"], [("0", "1")])
    g = product(two, two)
    assert g.n == 4
    assert sorted(g.names) == sorted(["(0,0)", "(0,1)", "(1,0)", "(1,1)"])
    x = g.index("(0,1)")
    y = g.index("(1,0)")
    assert g.join(x, y) == g.top and g.meet(x, y) == g.bot


def test_hasse_dot_deterministic_covers_only():
    f = diamond()
    dot = hasse_dot(f, "diamond")
    assert dot == hasse_dot(f, "diamond")
    assert dot.count("->") == 4  # covering edges only, not 0 -> 1


@st.composite
def small_posets(draw):
    n = draw(st.integers(min_value=1, max_value=5))
    names = [f"e{i}" for i in range(n)]
    pairs = draw(
        st.lists(
            st.tuples(st.sampled_from(names), st.sampled_from(names)),
            max_size=8,
        )
    )
    # orient pairs by index so the relation is acyclic
    pairs = [(a, b) for a, b in pairs if int(a[1:]) < int(b[1:])]
    return names, pairs


@settings(max_examples=60, deadline=None)
@given(small_posets())
def test_downset_frames_are_distributive_lattices(poset):
    names, pairs = poset
    f = downset_frame(names, pairs)
    for a in f.elements():
        for b in f.elements():
            for c in f.elements():
                lhs = f.meet(a, f.join(b, c))
                rhs = f.join(f.meet(a, b), f.meet(a, c))
                assert lhs == rhs
    assert all(f.leq(f.bot, a) and f.leq(a, f.top) for a in f.elements())
