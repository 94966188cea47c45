import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from proxkit.catalog import catalog_instances, catalog_morphisms
from proxkit.chain import El, Tail, build_chain_frame, lim, succ
from proxkit.errors import MalformedMap, NotComposable
from proxkit.finite import build_finite_frame
from proxkit.morphisms import (
    ChainMap,
    FiniteMap,
    SegRule,
    compose,
    enumerate_proxhoms,
    identity_map,
    is_proper,
    kappa_map,
    rho,
    rmap_map,
    sigma_map,
    star_compose,
    theta,
    validate_pframemap,
    validate_proxhom,
)
from proxkit.proximity import chain_proximity, order_proximity
from proxkit.roundideal import rframe


def k1():
    return chain_proximity(build_chain_frame(1), {1})


def diamond_prox():
    return order_proximity(
        build_finite_frame(
            ["0", "a", "b", "1"], [("0", "a"), ("0", "b"), ("a", "1"), ("b", "1")]
        )
    )


# -- construction and validation ---------------------------------------------


def test_malformed_maps_rejected():
    p = k1()
    d = diamond_prox()
    with pytest.raises(MalformedMap):
        FiniteMap(d, d, (0, 1, 2))  # wrong table length
    with pytest.raises(MalformedMap):
        FiniteMap(d, d, (0, 1, 2, 9))  # value outside the target
    with pytest.raises(MalformedMap):
        ChainMap(p, p, (SegRule(Tail.affine(0, 1, 0)),))  # missing a rule
    with pytest.raises(MalformedMap):
        # point segments take a single constant value, no exceptions
        ChainMap(p, p, (
            SegRule(Tail.affine(0, 1, 0)),
            SegRule(Tail.constant(p.frame.top), exceptions=((0, p.frame.bot),)),
        ))
    with pytest.raises(MalformedMap):
        # affine tails cannot land in a finite frame
        ChainMap(p, d, (
            SegRule(Tail.affine(0, 1, 0)), SegRule(Tail.constant(3)),
        ))
    with pytest.raises(MalformedMap):
        # affine tails must land in an omega block of the target
        ChainMap(p, p, (
            SegRule(Tail.affine(1, 1, 0)), SegRule(Tail.constant(p.frame.top)),
        ))
    with pytest.raises(MalformedMap):
        ChainMap(p, p, (
            SegRule(Tail.affine(0, 1, 0), exceptions=((-1, p.frame.bot),)),
            SegRule(Tail.constant(p.frame.top)),
        ))


def test_normalization_drops_redundant_exceptions():
    p = k1()
    f = ChainMap(p, p, (
        SegRule(Tail.affine(0, 1, 0), exceptions=((3, El(0, 3)), (5, El(0, 9)))),
        SegRule(Tail.constant(p.frame.top)),
    ))
    # the exception at 3 agrees with the tail and must vanish
    assert f.rules[0].exceptions == ((5, El(0, 9)),)
    assert f == ChainMap(p, p, (
        SegRule(Tail.affine(0, 1, 0), exceptions=((5, El(0, 9)),)),
        SegRule(Tail.constant(p.frame.top)),
    ))


def test_catalog_morphisms_validator_profile():
    ms = catalog_morphisms()
    # every catalog morphism is at least a proximity homomorphism
    for name, m in ms.items():
        assert validate_proxhom(m).ok, name
    # h collapses a block: homomorphism yes, frame map no
    h = ms["chain-h"]
    rep = validate_pframemap(h)
    assert not rep.ok
    assert rep.verdict("directed-joins").witness == ("L1",)
    # frozen validator profile (pframemap?, proper?)
    profile = {
        "chain-id": (True, True),
        "chain-double": (True, True),
        "chain-shift3": (True, True),
        "chain-h": (False, True),
        "k2-f": (True, False),
        "k2-g": (False, True),
    }
    for name, (pfm, proper) in profile.items():
        assert validate_pframemap(ms[name]).ok == pfm, name
        assert is_proper(ms[name]) == proper, name


def test_meet_hom_without_subadditivity_detected():
    d = diamond_prox()
    f = d.frame
    tbl = [f.bot] * f.n
    tbl[f.top] = f.top
    m = FiniteMap(d, d, tuple(tbl))  # a,b -> 0 but a v b = 1 -> 1
    rep = validate_proxhom(m)
    assert rep.verdict("meet-hom").ok
    assert not rep.verdict("join-subadditive").ok
    assert not rep.ok


def test_non_monotone_chain_map_fails_meet_hom():
    p = k1()
    f = ChainMap(p, p, (
        SegRule(Tail.affine(0, 1, 0), exceptions=((2, El(0, 9)),)),
        SegRule(Tail.constant(p.frame.top)),
    ))
    rep = validate_proxhom(f)
    assert not rep.verdict("meet-hom").ok
    assert rep.verdict("meet-hom").witness == ("S0.2", "S0.3")


def test_boundary_monotonicity_uses_block_sup():
    # tail grows without bound but the next segment maps strictly below
    # the block supremum: monotonicity must fail at the boundary
    p = chain_proximity(build_chain_frame(2), {2})
    f = p.frame
    bad = ChainMap(p, p, (
        SegRule(Tail.affine(2, 1, 0)),       # S0.n -> S1.n, sup = L2
        SegRule(Tail.constant(succ(f, 1, 0))),  # L1 -> S1.0 < L2
        SegRule(Tail.affine(2, 1, 1)),
        SegRule(Tail.constant(f.top)),
    ))
    assert not validate_proxhom(bad).verdict("meet-hom").ok


# -- composition -------------------------------------------------------------


def test_compose_mismatched_frames_rejected():
    ms = catalog_morphisms()
    with pytest.raises(NotComposable):
        compose(ms["chain-id"], ms["k2-f"])
    with pytest.raises(NotComposable):
        star_compose(ms["chain-id"], ms["k2-f"])


def test_plain_composition_identities():
    for name, m in catalog_morphisms().items():
        assert compose(m, identity_map(m.src)) == m, name
        assert compose(identity_map(m.dst), m) == m, name


def test_star_composition_identities_on_homomorphisms():
    # value-approximation makes the identity a two-sided star unit
    for name, m in catalog_morphisms().items():
        assert star_compose(m, identity_map(m.src)) == m, name
        assert star_compose(identity_map(m.dst), m) == m, name


def test_star_differs_from_plain_at_nonreflexive_limit():
    ms = catalog_morphisms()
    f, g = ms["k2-f"], ms["k2-g"]
    c, s = compose(g, f), star_compose(g, f)
    L1 = lim(f.src.frame, 1)
    assert c.apply(L1) == lim(f.src.frame, 2)
    assert s.apply(L1) == succ(f.src.frame, 0, 0)
    # only the star composite stays inside the category
    assert validate_proxhom(s).ok
    assert not validate_proxhom(c).ok
    # away from the patched limit the two agree
    for x in [succ(f.src.frame, 0, n) for n in range(6)] + [f.src.frame.top]:
        assert c.apply(x) == s.apply(x)


def test_star_composition_is_associative_on_catalog():
    ms = catalog_morphisms()
    triples = [
        (ms["k2-g"], ms["k2-f"], identity_map(ms["k2-f"].src)),
        (ms["chain-h"], ms["chain-double"], ms["chain-shift3"]),
    ]
    for a, b, c in triples:
        assert star_compose(a, star_compose(b, c)) == star_compose(
            star_compose(a, b), c
        )


@settings(max_examples=80, deadline=None)
@given(st.integers(1, 3), st.integers(0, 4), st.integers(1, 3),
       st.integers(0, 4), st.integers(0, 12))
def test_plain_composition_is_pointwise(a1, b1, a2, b2, n):
    p = k1()
    top = p.frame.top
    f = ChainMap(p, p, (SegRule(Tail.affine(0, a1, b1)), SegRule(Tail.constant(top))))
    g = ChainMap(p, p, (
        SegRule(Tail.affine(0, a2, b2), exceptions=((b2 + a2, El(0, b2 + a2)),)),
        SegRule(Tail.constant(top)),
    ))
    gf = compose(g, f)
    x = El(0, n)
    assert gf.apply(x) == g.apply(f.apply(x))
    assert gf.apply(top) == g.apply(f.apply(top))


# -- enumeration as an oracle -------------------------------------------------


def test_enumerated_homomorphism_counts():
    insts = dict(catalog_instances())
    counts = {
        ("two", "two"): 1,
        ("two", "diamond"): 1,
        ("chain3", "two"): 2,
        ("chain3", "chain3"): 3,
        ("chain3", "diamond"): 4,
        ("diamond", "two"): 2,
        ("diamond", "chain3"): 2,
        ("diamond", "diamond"): 4,
    }
    for (a, b), n in counts.items():
        homs = enumerate_proxhoms(insts[a], insts[b])
        assert len(homs) == n, (a, b)
        for f in homs:
            assert validate_proxhom(f).ok


def test_enumerated_homomorphisms_closed_under_star():
    d = diamond_prox()
    homs = enumerate_proxhoms(d, d)
    for f in homs:
        for g in homs:
            assert star_compose(g, f) in homs


# -- theta / rho --------------------------------------------------------------


def test_theta_sends_homomorphisms_to_frame_maps():
    for name, m in catalog_morphisms().items():
        rfd = rframe(m.src)
        t = theta(m, rfd)
        rep = validate_pframemap(t)
        assert rep.ok, (name, rep.failures())


def test_theta_values_on_collapsing_map():
    h = catalog_morphisms()["chain-h"]
    rfd = rframe(h.src)
    t = theta(h, rfd)
    f = rfd.frame
    # the ideal below L1 joins to the sup of h over the block: bottom
    assert t.apply(El(1, 0)) == h.dst.frame.bot
    assert f.segments[1].label == "B[L1]"
    # the principal ideal at L1 goes to h(L1) = L1
    assert t.apply(El(2, 0)) == lim(h.dst.frame, 1)


def test_theta_rho_roundtrip_on_catalog():
    for name, m in catalog_morphisms().items():
        rfd = rframe(m.src)
        assert rho(theta(m, rfd), rfd) == m, name


def test_rho_theta_roundtrip_on_frame_maps():
    # psi -> rho(psi) -> theta recovers psi for frame maps off the ideal
    # frame; sigma_map and theta images are such maps
    for name, m in catalog_morphisms().items():
        rfd = rframe(m.src)
        for psi in (theta(m, rfd), sigma_map(rfd)):
            assert theta(rho(psi, rfd), rfd) == psi, name


def test_theta_rho_exhaustive_on_small_finite():
    insts = dict(catalog_instances())
    small = [insts[k] for k in ("two", "chain3", "diamond")]
    for src in small:
        rfd = rframe(src)
        for dst in small:
            for f in enumerate_proxhoms(src, dst):
                t = theta(f, rfd)
                assert validate_pframemap(t).ok
                assert rho(t, rfd) == f


def test_rho_requires_matching_ideal_frame():
    ms = catalog_morphisms()
    rfd = rframe(ms["k2-f"].src)
    with pytest.raises(NotComposable):
        rho(ms["chain-id"], rfd)


def test_factorization_through_the_ideal_frame():
    # every homomorphism is join-of-image after approximate-then-push:
    # f = sigma . Rf . kappa
    for name, m in catalog_morphisms().items():
        rfd_l, rfd_m = rframe(m.src), rframe(m.dst)
        lifted = compose(
            sigma_map(rfd_m), compose(rmap_map(m, rfd_l, rfd_m), kappa_map(rfd_l))
        )
        assert lifted == m, name


def test_rmap_map_is_functorial():
    ms = catalog_morphisms()
    f, g = ms["k2-f"], ms["k2-g"]
    rfd = rframe(f.src)
    lhs = rmap_map(star_compose(g, f), rfd, rfd)
    rhs = compose(rmap_map(g, rfd, rfd), rmap_map(f, rfd, rfd))
    assert lhs == rhs
    assert rmap_map(identity_map(f.src), rfd, rfd) == identity_map(rfd.wb)
