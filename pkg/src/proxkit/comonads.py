"""The two comonads on proximity frames and their law harness.

The ideal-frame construction carries two proximities: the way-below
relation and the maximal proximity (inclusion refined by relating the
joins).  Re-tagging the carrier between them is the natural map beta.
Both comultiplications turn out to be the left adjoint of the join map:
r is alpha for the way-below structure, and the membership rule
"join of K lies in I" makes c exactly alpha for the maximal structure.
All laws are decided by normal-form equality of represented morphisms;
on chain instances that covers every element class exactly, while
seed-driven samples exercise the case-split code itself.
"""

from __future__ import annotations

import random
from dataclasses import replace

from .chain import El, ElementFamily, Tail
from .errors import NotComposable, NotStablyCompact
from .morphisms import (
    ChainMap,
    FiniteMap,
    Morphism,
    SegRule,
    alpha_map,
    compose,
    identity_map,
    is_proper,
    kappa_map,
    rmap_map,
    sigma_map,
    validate_pframemap,
)
from .proximity import ChainProximity, FiniteProximity, Proximity, validate_proximity
from .reports import LawReport, law_fail, law_pass
from .roundideal import (
    BelowLim,
    DirFam,
    Prin,
    RFrameData,
    dir_sup,
    ideal_frame,
    is_stably_compact,
    kappa,
    member,
    retag,
    rframe,
    rmap,
    sigma,
    subideal,
    way_below_ideals,
)


def describe_instance(prox: Proximity) -> str:
    if isinstance(prox, FiniteProximity):
        return "finite:" + ",".join(prox.frame.names)
    segs = ",".join(s.label for s in prox.frame.segments)
    refl = sorted(prox.frame.label(e) for e in prox.reflexive_limits)
    return f"chain:[{segs}],R=[{','.join(refl)}]"


# -- the maximal proximity --------------------------------------------------


def max_proximity(rfd: RFrameData) -> Proximity:
    """I below J iff I is contained in J and the joins are related."""
    base = rfd.base
    if isinstance(base, FiniteProximity):
        n = rfd.frame.n
        ideals = [rfd.ideal_of(i) for i in range(n)]
        mat = tuple(
            tuple(
                subideal(ideals[i], ideals[j])
                and base.rel(sigma(ideals[i]), sigma(ideals[j]))
                for j in range(n)
            )
            for i in range(n)
        )
        return FiniteProximity(rfd.frame, mat)
    # a limit of the ideal frame stands for everything-under-a-base-limit;
    # its join relates to itself exactly when that base limit does
    refl = frozenset(
        El(s, 0)
        for s, (kind, payload) in enumerate(rfd.seg_descs)
        if kind == "below" and base.reflexive(payload)
    )
    return ChainProximity(rfd.frame, refl)


def max_proximity_agreement(rfd: RFrameData, depth: int = 3,
                            seed: int | None = None) -> LawReport:
    """The two definitions of the maximal proximity agree: relating the
    joins is the same as being way below the approximant ideal of the
    other join."""
    maxp = max_proximity(rfd)
    base = rfd.base
    reps = _reps(rfd, depth, seed)
    samples = 0
    for i in reps:
        for j in reps:
            samples += 1
            I, J = rfd.ideal_of(i), rfd.ideal_of(j)
            by_joins = subideal(I, J) and base.rel(sigma(I), sigma(J))
            by_wb = subideal(I, J) and way_below_ideals(I, kappa(base, sigma(J)))
            tagged = maxp.rel(i, j)
            if not (by_joins == by_wb == tagged):
                return law_fail(
                    "maxrel.agreement", describe_instance(base),
                    witness=(repr(I), repr(J)), samples=samples, seed=seed,
                )
    return law_pass("maxrel.agreement", describe_instance(base),
                    samples=samples, seed=seed)


def _reps(rfd: RFrameData, depth: int, seed: int | None):
    if isinstance(rfd.base, FiniteProximity):
        return list(rfd.frame.elements())
    reps = rfd.frame.class_representatives(depth)
    if seed is not None:
        rng = random.Random(seed)
        for i, s in enumerate(rfd.frame.segments):
            if s.kind == "omega":
                reps.append(El(i, rng.randrange(depth, depth + 40)))
    return reps


# -- natural transformation components, as represented morphisms ------------


def retag_map(f: Morphism, new_src: Proximity, new_dst: Proximity) -> Morphism:
    """Same carrier map between re-tagged proximities."""
    if f.src.frame != new_src.frame or f.dst.frame != new_dst.frame:
        raise NotComposable("re-tag must keep both carrier frames")
    return replace(f, src=new_src, dst=new_dst)


def beta_map(rfd: RFrameData) -> Morphism:
    """Carrier identity from the way-below structure to the maximal one."""
    return retag_map(identity_map(rfd.wb), rfd.wb, max_proximity(rfd))


def epsilon_map(rfd: RFrameData) -> Morphism:
    """Counit of the maximal-structure comonad; satisfies epsilon after
    beta = sigma."""
    return retag_map(sigma_map(rfd), max_proximity(rfd), rfd.base)


def r_map(rfd: RFrameData, rrfd: RFrameData | None = None) -> Morphism:
    """I -> its way-below ideal of ideals: alpha on the ideal frame."""
    if rrfd is None:
        rrfd = rframe(rfd.wb)
    return alpha_map(rrfd)


def c_map(rfd: RFrameData, ccfd: RFrameData | None = None) -> Morphism:
    """Ibar -> {Kbar : join of K in I}: alpha for the maximal structure,
    landing in the ideal frame of the maximal proximity (re-tagged)."""
    maxp = max_proximity(rfd)
    if ccfd is None:
        ccfd = rframe(maxp)
    return retag_map(alpha_map(ccfd), maxp, max_proximity(ccfd))


def m_map(rfd: RFrameData, jfd: RFrameData | None = None) -> Morphism:
    """Inclusion of round ideals into all ideals (carrier-preserving)."""
    if jfd is None:
        jfd = ideal_frame(_frame_of(rfd.base))
    if isinstance(rfd.base, FiniteProximity):
        table = tuple(
            jfd.el_of(retag(rfd.ideal_of(i), jfd.base))
            for i in rfd.frame.elements()
        )
        return FiniteMap(rfd.wb, jfd.wb, table)
    rules = []
    for kind, payload in rfd.seg_descs:
        if kind == "prin_block":
            target = jfd.el_of(Prin(jfd.base, El(payload, 0)))
            rules.append(SegRule(Tail.affine(target.seg, 1, 0)))
        elif kind == "prin":
            rules.append(SegRule(Tail.constant(jfd.el_of(Prin(jfd.base, payload)))))
        else:
            rules.append(SegRule(Tail.constant(jfd.el_of(BelowLim(jfd.base, payload)))))
    return ChainMap(rfd.wb, jfd.wb, tuple(rules))


def _frame_of(prox: Proximity):
    return prox.frame


def order_retag(f: Morphism) -> Morphism:
    """The same carrier map between the order proximities (for the
    all-ideals functor action)."""
    from .proximity import order_proximity

    return retag_map(
        f, order_proximity(f.src.frame), order_proximity(f.dst.frame)
    )


def cmap_of(f: Morphism, src_rfd: RFrameData, dst_rfd: RFrameData) -> Morphism:
    """Functor action of the maximal-structure comonad: the ideal-functor
    action re-tagged on both ends.  src_rfd/dst_rfd are the ideal frames
    of f's source and target."""
    rf = rmap_map(f, src_rfd, dst_rfd)
    return retag_map(rf, max_proximity(src_rfd), max_proximity(dst_rfd))


def kleisli_compose(v: Morphism, u: Morphism,
                    rfd_L: RFrameData, rfd_M: RFrameData) -> Morphism:
    """v after u in the co-Kleisli sense: v . Ru . r."""
    if u.src != rfd_L.wb or v.src != rfd_M.wb or u.dst != rfd_M.base:
        raise NotComposable("expected u: R(L) -> M and v: R(M) -> N")
    rrfd_L = rframe(rfd_L.wb)
    return compose(v, compose(rmap_map(u, rrfd_L, rfd_M), r_map(rfd_L, rrfd_L)))


def coalgebra_structure(prox: Proximity, rfd: RFrameData | None = None) -> Morphism:
    """The canonical coalgebra beta after alpha on a stably compact
    instance."""
    if not is_stably_compact(prox):
        raise NotStablyCompact("coalgebras exist only over stably compact instances")
    if rfd is None:
        rfd = rframe(prox)
    return retag_map(alpha_map(rfd), prox, max_proximity(rfd))


# -- law harness -------------------------------------------------------------


def _law(name: str, instance: str, ok: bool, witness=None, samples=0,
         seed=None, note="") -> LawReport:
    if ok:
        return law_pass(name, instance, samples=samples, seed=seed, note=note)
    return law_fail(name, instance, witness=witness, samples=samples,
                    seed=seed, note=note)


def _map_eq_law(name, instance, lhs, rhs, samples=0, seed=None) -> LawReport:
    if lhs == rhs:
        return law_pass(name, instance, samples=samples, seed=seed,
                        note="normal-form equality")
    return law_fail(name, instance, witness=(repr(lhs), repr(rhs)),
                    samples=samples, seed=seed)


def comonad_laws(which: str, prox: Proximity, depth: int = 3,
                 seed: int = 0) -> list[LawReport]:
    """Counit and comultiplication laws, by exact morphism equality."""
    inst = describe_instance(prox)
    rfd = rframe(prox)
    n = len(_reps(rfd, depth, seed))
    if which == "R":
        rrfd = rframe(rfd.wb)
        rrrfd = rframe(rrfd.wb)
        r = r_map(rfd, rrfd)
        ide = identity_map(rfd.wb)
        out = [
            _map_eq_law("R.counit.left", inst,
                        compose(sigma_map(rrfd), r), ide, n, seed),
            _map_eq_law("R.counit.right", inst,
                        compose(rmap_map(sigma_map(rfd), rrfd, rfd), r), ide,
                        n, seed),
            _map_eq_law("R.coassoc", inst,
                        compose(r_map(rrfd, rrrfd), r),
                        compose(rmap_map(r, rrfd, rrrfd), r), n, seed),
            _map_eq_law("R.idempotent", inst,
                        compose(r, sigma_map(rrfd)), identity_map(rrfd.wb),
                        n, seed),
        ]
        return out
    if which == "C":
        maxp = max_proximity(rfd)
        ccfd = rframe(maxp)
        maxp2 = max_proximity(ccfd)
        cccfd = rframe(maxp2)
        c = c_map(rfd, ccfd)
        eps_L = epsilon_map(rfd)
        eps_CL = epsilon_map(ccfd)
        ide = identity_map(maxp)
        out = [
            _map_eq_law("C.counit.left", inst, compose(eps_CL, c), ide, n, seed),
            _map_eq_law("C.counit.right", inst,
                        compose(cmap_of(eps_L, ccfd, rfd), c), ide, n, seed),
            _map_eq_law("C.coassoc", inst,
                        compose(c_map(ccfd, cccfd), c),
                        compose(cmap_of(c, ccfd, cccfd), c), n, seed),
        ]
        out.append(_nonprincipal_comult(prox, rfd, maxp, ccfd, c, seed))
        return out
    raise NotComposable(f"unknown comonad selector {which!r}")


def _nonprincipal_comult(prox, rfd, maxp, ccfd, c, seed) -> LawReport:
    """At a limit of the ideal frame, the comultiplication value is the
    non-principal directed union of the principal classes below it."""
    inst = describe_instance(prox)
    if isinstance(prox, FiniteProximity):
        return law_pass("C.comult.nonprincipal", inst,
                        note="no limit classes on a finite instance")
    limits = rfd.frame.limits()
    if not limits:
        return law_pass("C.comult.nonprincipal", inst, note="no limit classes")
    samples = 0
    for b in limits:
        got = ccfd.ideal_of(c.apply(b))
        expected = BelowLim(maxp, b)
        samples += 1
        if got != expected:
            return law_fail("C.comult.nonprincipal", inst,
                            witness=(repr(got), repr(expected)), samples=samples,
                            seed=seed)
        # the same ideal as an explicit directed union of principals
        union = dir_sup(DirFam(maxp, ElementFamily(rfd.frame,
                                                   Tail.affine(b.seg - 1, 1, 0))))
        if union != expected:
            return law_fail("C.comult.nonprincipal", inst,
                            witness=(repr(union), repr(expected)),
                            samples=samples, seed=seed)
        if member(b, got):
            return law_fail("C.comult.nonprincipal", inst,
                            witness=(repr(b),), samples=samples, seed=seed,
                            note="value is principal but must not be")
    return law_pass("C.comult.nonprincipal", inst, samples=samples, seed=seed)


def coalgebra_laws(prox: Proximity, depth: int = 3, seed: int = 0) -> list[LawReport]:
    inst = describe_instance(prox)
    if not is_stably_compact(prox):
        return [law_fail("coalgebra.exists", inst,
                         note="instance is not stably compact")]
    rfd = rframe(prox)
    maxp = max_proximity(rfd)
    ccfd = rframe(maxp)
    struct = coalgebra_structure(prox, rfd)
    n = len(_reps(rfd, depth, seed))
    return [
        law_pass("coalgebra.exists", inst),
        _map_eq_law("coalgebra.counit", inst,
                    compose(epsilon_map(rfd), struct), identity_map(prox),
                    n, seed),
        _map_eq_law("coalgebra.coassoc", inst,
                    compose(c_map(rfd, ccfd), struct),
                    compose(cmap_of(struct, rfd, ccfd), struct), n, seed),
    ]


def check_coalgebra_morphism(f: Morphism,
                             src_rfd: RFrameData | None = None,
                             dst_rfd: RFrameData | None = None) -> LawReport:
    """The structure square commutes exactly when f preserves way-below."""
    inst = f"{describe_instance(f.src)} -> {describe_instance(f.dst)}"
    if not (is_stably_compact(f.src) and is_stably_compact(f.dst)):
        return law_fail("coalgebra.morphism", inst,
                        note="both instances must be stably compact")
    if not validate_pframemap(f).ok:
        return law_fail("coalgebra.morphism", inst,
                        note="map does not preserve the proximities")
    if src_rfd is None:
        src_rfd = rframe(f.src)
    if dst_rfd is None:
        dst_rfd = rframe(f.dst)
    lhs = compose(rmap_map(f, src_rfd, dst_rfd), alpha_map(src_rfd))
    rhs = compose(alpha_map(dst_rfd), f)
    square = lhs == rhs
    proper = is_proper(f)
    note = f"square={'holds' if square else 'fails'}; proper={proper}"
    if square == proper:
        return law_pass("coalgebra.morphism", inst, note=note)
    return law_fail("coalgebra.morphism", inst,
                    witness=(repr(lhs), repr(rhs)), note=note)


def kz_check(prox: Proximity, depth: int = 4, seed: int = 0) -> LawReport:
    """Lax-idempotence inequality: the counit at the doubled instance sits
    below the functor image of the counit, pointwise."""
    inst = describe_instance(prox)
    rfd = rframe(prox)
    maxp = max_proximity(rfd)
    ccfd = rframe(maxp)
    eps_CL = epsilon_map(ccfd)
    ceps = cmap_of(epsilon_map(rfd), ccfd, rfd)
    frame = rfd.frame
    leq = frame.leq
    samples = 0
    for x in _reps(ccfd, depth, seed):
        samples += 1
        if not leq(eps_CL.apply(x), ceps.apply(x)):
            return law_fail("C.kz", inst, witness=(repr(x),), samples=samples,
                            seed=seed)
    return law_pass("C.kz", inst, samples=samples, seed=seed)


def subcomonad_check(prox: Proximity, depth: int = 3, seed: int = 0) -> list[LawReport]:
    """The way-below comonad includes into the maximal one: the counits
    agree through beta and the comultiplications match through doubled
    beta after r."""
    inst = describe_instance(prox)
    rfd = rframe(prox)
    rrfd = rframe(rfd.wb)
    maxp = max_proximity(rfd)
    ccfd = rframe(maxp)
    n = len(_reps(rfd, depth, seed))
    beta = beta_map(rfd)
    lhs = compose(c_map(rfd, ccfd), beta)
    rbeta = rmap_map(beta, rrfd, ccfd)
    rhs = compose(
        retag_map(rbeta, rbeta.src, max_proximity(ccfd)),
        r_map(rfd, rrfd),
    )
    return [
        _map_eq_law("sub.comult", inst, lhs, rhs, n, seed),
        _map_eq_law("sub.counit", inst,
                    compose(epsilon_map(rfd), beta), sigma_map(rfd), n, seed),
    ]


# -- naturality squares ------------------------------------------------------


def naturality_suite(f: Morphism, depth: int = 3, seed: int = 0) -> list[LawReport]:
    """The five squares, each run when f belongs to the right class."""
    from .morphisms import validate_proxhom

    inst = f"{describe_instance(f.src)} -> {describe_instance(f.dst)}"
    rfd_L, rfd_M = rframe(f.src), rframe(f.dst)
    rf = rmap_map(f, rfd_L, rfd_M)
    n = len(_reps(rfd_L, depth, seed))
    out: list[LawReport] = []

    if validate_proxhom(f).ok:
        jfd_L = ideal_frame(f.src.frame)
        jfd_M = ideal_frame(f.dst.frame)
        jf = rmap_map(order_retag(f), jfd_L, jfd_M)
        out.append(_map_eq_law(
            "nat.m", inst,
            compose(jf, m_map(rfd_L, jfd_L)),
            compose(m_map(rfd_M, jfd_M), rf), n, seed))

    if validate_pframemap(f).ok:
        out.append(_map_eq_law(
            "nat.sigma", inst,
            compose(f, sigma_map(rfd_L)),
            compose(sigma_map(rfd_M), rf), n, seed))
        rrfd_L, rrfd_M = rframe(rfd_L.wb), rframe(rfd_M.wb)
        out.append(_map_eq_law(
            "nat.r", inst,
            compose(rmap_map(rf, rrfd_L, rrfd_M), r_map(rfd_L, rrfd_L)),
            compose(r_map(rfd_M, rrfd_M), rf), n, seed))
        maxp_L, maxp_M = max_proximity(rfd_L), max_proximity(rfd_M)
        cf = retag_map(rf, maxp_L, maxp_M)
        out.append(_map_eq_law(
            "nat.beta", inst,
            compose(cf, beta_map(rfd_L)),
            compose(beta_map(rfd_M), rf), n, seed))
        ccfd_L, ccfd_M = rframe(maxp_L), rframe(maxp_M)
        ccf = retag_map(rmap_map(cf, ccfd_L, ccfd_M),
                        max_proximity(ccfd_L), max_proximity(ccfd_M))
        out.append(_map_eq_law(
            "nat.c", inst,
            compose(ccf, c_map(rfd_L, ccfd_L)),
            compose(c_map(rfd_M, ccfd_M), cf), n, seed))
        # the functor image respects the maximal structure
        out.append(_law(
            "nat.maxrel-preserved", inst,
            validate_pframemap(cf).ok, samples=n, seed=seed))
    return out


# -- adjunction and membership lemmas ----------------------------------------


def adjunction_checks(prox: Proximity, depth: int = 3, seed: int = 0) -> list[LawReport]:
    """Pointwise inequalities for the adjoint chain: comultiplication,
    the doubled counit, and beta-after-kappa."""
    inst = describe_instance(prox)
    rfd = rframe(prox)
    maxp = max_proximity(rfd)
    ccfd = rframe(maxp)
    c = c_map(rfd, ccfd)
    eps_CL = epsilon_map(ccfd)
    bk = retag_map(kappa_map(ccfd), maxp, max_proximity(ccfd))
    frame_C = rfd.frame
    frame_CC = ccfd.frame
    out = []
    samples = 0
    ok1 = ok2 = True
    w1 = w2 = None
    for x in _reps(rfd, depth, seed):
        samples += 1
        # unit/counit of c -| eps: x <= eps(c(x)) (equality) and c(eps(y)) <= y
        if not frame_C.leq(x, eps_CL.apply(c.apply(x))):
            ok1, w1 = False, (repr(x),)
    for y in _reps(ccfd, depth, seed):
        samples += 1
        if not frame_CC.leq(c.apply(eps_CL.apply(y)), y):
            ok1, w1 = False, (repr(y),)
        # eps -| beta kappa: y <= bk(eps(y))
        if not frame_CC.leq(y, bk.apply(eps_CL.apply(y))):
            ok2, w2 = False, (repr(y),)
    for x in _reps(rfd, depth, seed):
        samples += 1
        if not frame_C.leq(eps_CL.apply(bk.apply(x)), x):
            ok2, w2 = False, (repr(x),)
    out.append(_law("adj.c-eps", inst, ok1, witness=w1, samples=samples, seed=seed))
    out.append(_law("adj.eps-betakappa", inst, ok2, witness=w2, samples=samples,
                    seed=seed))
    return out


def doubled_membership_lemma(prox: Proximity, depth: int = 4,
                             seed: int = 0) -> LawReport:
    """For a doubled ideal J: the counit of the counit lands in I exactly
    when some intermediate class dominates eps(J) and lands in I."""
    inst = describe_instance(prox)
    rfd = rframe(prox)
    maxp = max_proximity(rfd)
    ccfd = rframe(maxp)
    eps_CL = epsilon_map(ccfd)
    reps_C = _reps(rfd, depth, seed)
    reps_CC = _reps(ccfd, depth, seed)
    samples = 0
    for jbar in reps_CC:
        for ibar in reps_C:
            samples += 1
            I = rfd.ideal_of(ibar)
            ej = eps_CL.apply(jbar)  # an element of the ideal frame
            lhs = member(sigma(rfd.ideal_of(ej)), I)
            rhs = any(
                maxp.rel(ej, kbar) and member(sigma(rfd.ideal_of(kbar)), I)
                for kbar in reps_C
            )
            if lhs != rhs:
                return law_fail("C.doubled-membership", inst,
                                witness=(repr(jbar), repr(I)), samples=samples,
                                seed=seed, note="sampled witnesses")
    return law_pass("C.doubled-membership", inst, samples=samples, seed=seed,
                    note="sampled witnesses")


def maxrel_contains_wb(prox: Proximity, depth: int = 3, seed: int = 0) -> LawReport:
    """Way-below implies the maximal relation on all sampled ideal pairs."""
    inst = describe_instance(prox)
    rfd = rframe(prox)
    maxp = max_proximity(rfd)
    reps = _reps(rfd, depth, seed)
    samples = 0
    for i in reps:
        for j in reps:
            samples += 1
            if rfd.wb.rel(i, j) and not maxp.rel(i, j):
                return law_fail("maxrel.contains-wb", inst,
                                witness=(repr(i), repr(j)), samples=samples,
                                seed=seed)
    return law_pass("maxrel.contains-wb", inst, samples=samples, seed=seed)


def max_proximity_report(prox: Proximity):
    """The maximal proximity together with its full axiom report."""
    rfd = rframe(prox)
    maxp = max_proximity(rfd)
    return maxp, validate_proximity(maxp)
