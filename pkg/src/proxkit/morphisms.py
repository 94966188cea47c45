"""Represented morphisms between proximity frames.

Finite-source maps are full tables.  Chain-source maps carry one rule per
segment: finitely many exceptions plus an eventually-affine tail (or a
constant).  Rules are normalized on construction, so map equality is a
normal-form comparison and the identities checked by the law harness are
exact, not sampled.
"""

from __future__ import annotations

from dataclasses import dataclass

from .chain import AFFINE, CONST, OMEGA, ChainLikeFrame, El, ElementFamily, Tail
from .errors import MalformedMap, NotComposable, NotStablyCompact
from .proximity import ChainProximity, FiniteProximity, Proximity
from .reports import FAIL, PASS, SYMBOLIC, AxiomReport, Verdict
from .roundideal import (
    BelowLim,
    FinIdeal,
    Prin,
    RFrameData,
    is_stably_compact,
    kappa,
    rframe,
    rmap,
    sigma,
)


@dataclass(frozen=True)
class FiniteMap:
    src: Proximity
    dst: Proximity
    table: tuple

    def __post_init__(self):
        if len(self.table) != self.src.frame.n:
            raise MalformedMap("table length does not match the source frame")
        for v in self.table:
            if not _in_target(self.dst, v):
                raise MalformedMap(f"value {v!r} is not in the target frame")

    def apply(self, x):
        return self.table[x]

    def __repr__(self):
        names = self.src.frame.names
        return "FiniteMap{" + ", ".join(
            f"{names[i]}->{self._lab(v)}" for i, v in enumerate(self.table)
        ) + "}"

    def _lab(self, v):
        return self.dst.label(v)


@dataclass(frozen=True)
class SegRule:
    """Behaviour of a map on one source segment.  Point segments use a
    constant tail and no exceptions."""

    tail: Tail
    exceptions: tuple[tuple[int, object], ...] = ()

    def value(self, n: int):
        for m, v in self.exceptions:
            if m == n:
                return v
        return self.tail.value(n)

    def horizon(self) -> int:
        return max([m for m, _ in self.exceptions], default=-1) + 1


def _normalize_rule(rule: SegRule) -> SegRule:
    exc = sorted((m, v) for m, v in rule.exceptions if v != rule.tail.value(m))
    return SegRule(tail=rule.tail, exceptions=tuple(exc))


@dataclass(frozen=True)
class ChainMap:
    src: ChainProximity
    dst: Proximity
    rules: tuple[SegRule, ...]

    def __post_init__(self):
        segs = self.src.frame.segments
        if len(self.rules) != len(segs):
            raise MalformedMap("one rule per source segment required")
        for s, rule in zip(segs, self.rules):
            if s.kind != OMEGA and (rule.exceptions or rule.tail.kind != CONST):
                raise MalformedMap("point segments take a single constant value")
            if rule.tail.kind == AFFINE and not isinstance(self.dst, ChainProximity):
                raise MalformedMap("affine tails need a chain target")
            if any(m < 0 for m, _ in rule.exceptions):
                raise MalformedMap("negative exception index")
            for _, v in rule.exceptions:
                if not _in_target(self.dst, v):
                    raise MalformedMap(f"value {v!r} is not in the target frame")
            if rule.tail.kind == CONST:
                if not _in_target(self.dst, rule.tail.const):
                    raise MalformedMap(
                        f"value {rule.tail.const!r} is not in the target frame"
                    )
            elif (
                rule.tail.b < 0
                or not 0 <= rule.tail.seg < len(self.dst.frame.segments)
                or self.dst.frame.segments[rule.tail.seg].kind != OMEGA
            ):
                raise MalformedMap("affine tail must land in an omega block")
        object.__setattr__(
            self, "rules", tuple(_normalize_rule(r) for r in self.rules)
        )

    def apply(self, x: El):
        self.src.frame.check(x)
        return self.rules[x.seg].value(x.n)

    def block_sup(self, seg: int):
        """(supremum of the map over an omega segment, attained?)."""
        rule = self.rules[seg]
        if isinstance(self.dst, ChainProximity):
            fam = ElementFamily(
                self.dst.frame, rule.tail, tuple(rule.exceptions)
            )
            return fam.sup(), fam.attained()
        f = self.dst.frame
        out = rule.tail.const
        for _, v in rule.exceptions:
            out = f.join(out, v)
        return out, True

    def __repr__(self):
        parts = []
        for i, r in enumerate(self.rules):
            lab = self.src.frame.segments[i].label
            if r.tail.kind == CONST and not r.exceptions:
                parts.append(f"{lab}->{self._lab(r.tail.const)}")
            else:
                t = (
                    f"affine({r.tail.seg},{r.tail.a},{r.tail.b})"
                    if r.tail.kind == AFFINE
                    else self._lab(r.tail.const)
                )
                exc = {m: self._lab(v) for m, v in r.exceptions}
                parts.append(f"{lab}:{exc if exc else ''}{t}")
        return "ChainMap{" + ", ".join(parts) + "}"

    def _lab(self, v):
        return self.dst.label(v)


def _in_target(dst: Proximity, v) -> bool:
    if isinstance(dst, FiniteProximity):
        return isinstance(v, int) and 0 <= v < dst.frame.n
    return isinstance(v, El) and dst.frame.contains(v)


Morphism = FiniteMap | ChainMap


def identity_map(prox: Proximity) -> Morphism:
    if isinstance(prox, FiniteProximity):
        return FiniteMap(prox, prox, tuple(prox.frame.elements()))
    rules = []
    for i, s in enumerate(prox.frame.segments):
        if s.kind == OMEGA:
            rules.append(SegRule(Tail.affine(i, 1, 0)))
        else:
            rules.append(SegRule(Tail.constant(El(i, 0))))
    return ChainMap(prox, prox, tuple(rules))


def compose(g: Morphism, f: Morphism) -> Morphism:
    """Plain pointwise composition, exact on representations."""
    if f.dst != g.src:
        raise NotComposable("codomain of f must be the domain of g")
    if isinstance(f, FiniteMap):
        return FiniteMap(f.src, g.dst, tuple(g.apply(v) for v in f.table))
    rules = []
    for rule in f.rules:
        exc = [(m, g.apply(v)) for m, v in rule.exceptions]
        if rule.tail.kind == CONST:
            rules.append(SegRule(Tail.constant(g.apply(rule.tail.const)), tuple(exc)))
            continue
        s, a, b = rule.tail.seg, rule.tail.a, rule.tail.b
        grule = g.rules[s]
        taken = {m for m, _ in exc}
        for m, w in grule.exceptions:
            if m >= b and (m - b) % a == 0:
                n = (m - b) // a
                if n not in taken:
                    exc.append((n, w))
        gt = grule.tail
        if gt.kind == CONST:
            tail = Tail.constant(gt.const)
        else:
            tail = Tail.affine(gt.seg, gt.a * a, gt.a * b + gt.b)
        rules.append(SegRule(tail, tuple(exc)))
    return ChainMap(f.src, g.dst, tuple(rules))


def star_compose(g: Morphism, f: Morphism) -> Morphism:
    """Composition in the proximity-homomorphism category: the value at a
    is the join of g(f(b)) over the approximants b of a.

    Coincides with plain composition everywhere except at source elements
    that do not approximate themselves."""
    if f.dst != g.src:
        raise NotComposable("codomain of f must be the domain of g")
    comp = compose(g, f)
    if isinstance(f, FiniteMap):
        p, frame = f.src, f.src.frame
        table = []
        for a in frame.elements():
            j = g.dst.frame.bot
            for b in frame.elements():
                if p.rel(b, a):
                    j = g.dst.frame.join(j, comp.apply(b))
            table.append(j)
        return FiniteMap(f.src, g.dst, tuple(table))
    rules = list(comp.rules)
    for i, s in enumerate(f.src.frame.segments):
        e = El(i, 0)
        if s.kind == OMEGA or f.src.reflexive(e):
            continue
        # non-reflexive limit: the approximants are the block below it
        sup, _ = comp.block_sup(i - 1)
        rules[i] = SegRule(Tail.constant(sup))
    return ChainMap(f.src, g.dst, tuple(rules))


# -- validators -------------------------------------------------------------


def validate_proxhom(f: Morphism) -> AxiomReport:
    """Meet-semilattice map with f(0)=0, f(1)=1, joint subadditivity on
    related pairs, and exact approximation of every value."""
    if isinstance(f, FiniteMap):
        return _validate_finite_hom(f, frame_map=False)
    return _validate_chain_hom(f, frame_map=False)


def validate_pframemap(f: Morphism) -> AxiomReport:
    """Frame homomorphism (finite and described directed joins) that
    preserves the proximities; use is_proper for the way-below flag."""
    if isinstance(f, FiniteMap):
        return _validate_finite_hom(f, frame_map=True)
    return _validate_chain_hom(f, frame_map=True)


def is_proper(f: Morphism) -> bool:
    """Whether the map preserves the way-below relation."""
    if isinstance(f, FiniteMap):
        return all(
            f.dst.frame.way_below(f.apply(a), f.apply(b))
            for a in f.src.frame.elements()
            for b in f.src.frame.elements()
            if f.src.frame.way_below(a, b)
        )
    src_refl = lambda x: not f.src.frame.is_limit(x)
    if isinstance(f.dst, ChainProximity):
        dst_refl = lambda v: not f.dst.frame.is_limit(v)
    else:
        dst_refl = lambda v: True
    return _chain_preserves(f, src_refl, dst_refl) is None


def _validate_finite_hom(f: FiniteMap, frame_map: bool) -> AxiomReport:
    sf, df = f.src.frame, f.dst.frame
    names = sf.names
    dl = f.dst.label
    axioms = []

    v = Verdict(PASS)
    for a in sf.elements():
        for b in sf.elements():
            if f.apply(sf.meet(a, b)) != df.meet(f.apply(a), f.apply(b)):
                v = Verdict(FAIL, (names[a], names[b]), "meets not preserved")
    axioms.append(("meet-hom", v))

    v = Verdict(PASS) if f.apply(sf.bot) == df.bot else Verdict(
        FAIL, (names[sf.bot], dl(f.apply(sf.bot))), "bottom not preserved"
    )
    axioms.append(("zero", v))
    v = Verdict(PASS) if f.apply(sf.top) == df.top else Verdict(
        FAIL, (names[sf.top], dl(f.apply(sf.top))), "top not preserved"
    )
    axioms.append(("top", v))

    if frame_map:
        v = Verdict(PASS)
        for a in sf.elements():
            for b in sf.elements():
                if f.apply(sf.join(a, b)) != df.join(f.apply(a), f.apply(b)):
                    v = Verdict(FAIL, (names[a], names[b]), "joins not preserved")
        axioms.append(("join-hom", v))
        v = Verdict(PASS)
        for a in sf.elements():
            for b in sf.elements():
                if f.src.rel(a, b) and not f.dst.rel(f.apply(a), f.apply(b)):
                    v = Verdict(FAIL, (names[a], names[b]), "relation not preserved")
        axioms.append(("preserves-rel", v))
    else:
        v = Verdict(PASS)
        for a1, b1 in f.src.pairs():
            for a2, b2 in f.src.pairs():
                lhs = f.apply(sf.join(a1, a2))
                rhs = df.join(f.apply(b1), f.apply(b2))
                if not f.dst.rel(lhs, rhs):
                    v = Verdict(
                        FAIL, (names[a1], names[b1], names[a2], names[b2]),
                        "joint subadditivity fails",
                    )
        axioms.append(("join-subadditive", v))

        v = Verdict(PASS)
        for a in sf.elements():
            j = df.bot
            for b in sf.elements():
                if f.src.rel(b, a):
                    j = df.join(j, f.apply(b))
            if j != f.apply(a):
                v = Verdict(FAIL, (names[a], dl(j)), "approximation of values fails")
        axioms.append(("value-approximation", v))
    return AxiomReport(tuple(axioms))


def _chain_monotone(f: ChainMap):
    """Witness pair if f is not monotone, else None."""
    frame = f.src.frame
    leq = (
        f.dst.frame.leq
        if isinstance(f.dst, FiniteProximity)
        else lambda a, b: a <= b
    )
    for i, s in enumerate(frame.segments):
        rule = f.rules[i]
        if s.kind == OMEGA:
            prev = None
            for n in range(rule.horizon() + 2):
                val = rule.value(n)
                if prev is not None and not leq(prev, val):
                    return El(i, n - 1), El(i, n)
                prev = val
        if i + 1 < len(frame.segments):
            nxt = f.rules[i + 1].value(0)
            if s.kind == OMEGA:
                # the next value must dominate the whole block: exactly
                # sup <= next, whether or not the sup is attained
                sup, _ = f.block_sup(i)
                if not leq(sup, nxt):
                    return El(i, rule.horizon() + 1), El(i + 1, 0)
            else:
                if not leq(rule.value(0), nxt):
                    return El(i, 0), El(i + 1, 0)
    return None


def _chain_preserves(f: ChainMap, src_refl, dst_refl):
    """Witness element if f fails to map the relation with the given
    reflexivity profile into the target one; assumes f monotone."""
    frame = f.src.frame
    for i, s in enumerate(frame.segments):
        rule = f.rules[i]
        e = El(i, 0)
        if s.kind == OMEGA:
            # every omega element is reflexive for any chain relation
            for m, v in rule.exceptions:
                if not dst_refl(v):
                    return El(i, m)
            if rule.tail.kind == CONST and not dst_refl(rule.tail.const):
                return El(i, rule.horizon())
        elif src_refl(e):
            if not dst_refl(rule.value(0)):
                return e
        else:
            # strict pairs out of a non-reflexive point: a plateau right
            # above it must land on a reflexive value
            succ = frame.successor_of(e)
            if succ is not None and f.apply(e) == f.apply(succ):
                if not dst_refl(f.apply(e)):
                    return e
    return None


def _validate_chain_hom(f: ChainMap, frame_map: bool) -> AxiomReport:
    frame = f.src.frame
    axioms = []

    w = _chain_monotone(f)
    if w is not None:
        axioms.append(
            ("meet-hom", Verdict(FAIL, tuple(frame.label(x) for x in w), "not monotone"))
        )
        return AxiomReport(tuple(axioms))
    axioms.append(("meet-hom", Verdict(SYMBOLIC, note="monotone on a chain")))

    dbot = f.dst.frame.bot
    dtop = f.dst.frame.top
    v = Verdict(PASS) if f.apply(frame.bot) == dbot else Verdict(
        FAIL, (frame.label(frame.bot),), "bottom not preserved"
    )
    axioms.append(("zero", v))
    v = Verdict(PASS) if f.apply(frame.top) == dtop else Verdict(
        FAIL, (frame.label(frame.top),), "top not preserved"
    )
    axioms.append(("top", v))

    if isinstance(f.dst, ChainProximity):
        dst_refl = f.dst.reflexive
    else:
        dst_refl = lambda x: f.dst.rel(x, x)
    w = _chain_preserves(f, f.src.reflexive, dst_refl)
    name = "preserves-rel" if frame_map else "join-subadditive"
    if w is None:
        axioms.append((name, Verdict(SYMBOLIC, note="relation mapped per class")))
    else:
        axioms.append((name, Verdict(FAIL, (frame.label(w),))))

    # value behaviour at limit points
    if frame_map:
        v = Verdict(SYMBOLIC, note="described directed joins preserved")
        for ell in frame.limits():
            sup, _ = f.block_sup(ell.seg - 1)
            if f.apply(ell) != sup:
                v = Verdict(FAIL, (frame.label(ell),), "directed join not preserved")
        axioms.append(("directed-joins", v))
    else:
        v = Verdict(SYMBOLIC, note="approximation checked per limit class")
        for ell in frame.limits():
            if f.src.reflexive(ell):
                continue  # the element approximates itself
            sup, _ = f.block_sup(ell.seg - 1)
            if f.apply(ell) != sup:
                v = Verdict(FAIL, (frame.label(ell),), "value not approximated")
        axioms.append(("value-approximation", v))
    return AxiomReport(tuple(axioms))


# -- theta / rho ------------------------------------------------------------


def sigma_map(rfd: RFrameData) -> Morphism:
    """The join map from the ideal frame back to the base, as a morphism."""
    if isinstance(rfd.base, FiniteProximity):
        table = tuple(sigma(rfd.ideal_of(i)) for i in rfd.frame.elements())
        return FiniteMap(rfd.wb, rfd.base, table)
    rules = []
    for kind, payload in rfd.seg_descs:
        if kind == "prin_block":
            rules.append(SegRule(Tail.affine(payload, 1, 0)))
        elif kind == "prin":
            rules.append(SegRule(Tail.constant(payload)))
        else:
            rules.append(SegRule(Tail.constant(payload)))  # join of BelowLim
    return ChainMap(rfd.wb, rfd.base, tuple(rules))


def kappa_map(rfd: RFrameData) -> Morphism:
    """a -> its ideal of approximants, as a morphism into the ideal frame."""
    prox = rfd.base
    if isinstance(prox, FiniteProximity):
        table = tuple(rfd.el_of(kappa(prox, a)) for a in prox.frame.elements())
        return FiniteMap(prox, rfd.wb, table)
    return _pointed_ideal_map(rfd, use_wb=False)


def alpha_map(rfd: RFrameData) -> Morphism:
    """a -> its way-below ideal; only on stably compact instances."""
    if not is_stably_compact(rfd.base):
        raise NotStablyCompact("left adjoint needs a stably compact base")
    prox = rfd.base
    if isinstance(prox, FiniteProximity):
        table = tuple(rfd.el_of(kappa(prox, a)) for a in prox.frame.elements())
        return FiniteMap(prox, rfd.wb, table)
    return _pointed_ideal_map(rfd, use_wb=True)


def _pointed_ideal_map(rfd: RFrameData, use_wb: bool) -> ChainMap:
    prox = rfd.base
    frame = prox.frame
    rules = []
    for i, s in enumerate(frame.segments):
        e = El(i, 0)
        if s.kind == OMEGA:
            target = rfd.el_of(Prin(prox, e))
            rules.append(SegRule(Tail.affine(target.seg, 1, 0)))
        else:
            refl = (not frame.is_limit(e)) if use_wb else prox.reflexive(e)
            ideal = Prin(prox, e) if refl else BelowLim(prox, e)
            rules.append(SegRule(Tail.constant(rfd.el_of(ideal))))
    return ChainMap(prox, rfd.wb, tuple(rules))


def theta(f: Morphism, rfd: RFrameData | None = None) -> Morphism:
    """Turn a proximity homomorphism into the frame map on round ideals
    that joins the pushed ideal."""
    if rfd is None:
        rfd = rframe(f.src)
    if isinstance(f, FiniteMap):
        table = tuple(sigma(rmap(f, rfd.ideal_of(i))) for i in rfd.frame.elements())
        return FiniteMap(rfd.wb, f.dst, table)
    rules = []
    for kind, payload in rfd.seg_descs:
        if kind == "prin_block":
            rules.append(f.rules[payload])
        elif kind == "prin":
            rules.append(SegRule(Tail.constant(f.apply(payload))))
        else:  # below a limit: join of images over the block underneath
            sup, _ = f.block_sup(payload.seg - 1)
            rules.append(SegRule(Tail.constant(sup)))
    return ChainMap(rfd.wb, f.dst, tuple(rules))


def rho(psi: Morphism, rfd: RFrameData) -> Morphism:
    """Restrict a frame map on round ideals back to the base along the
    approximant-ideal map.  rfd is the ideal-frame data for the domain."""
    if psi.src != rfd.wb:
        raise NotComposable("psi is not defined on the given ideal frame")
    return compose(psi, kappa_map(rfd))


def rmap_map(f: Morphism, src_rfd: RFrameData | None = None,
             dst_rfd: RFrameData | None = None) -> Morphism:
    """The ideal-frame functor action on a represented morphism."""
    if src_rfd is None:
        src_rfd = rframe(f.src)
    if dst_rfd is None:
        dst_rfd = rframe(f.dst)
    if isinstance(f, FiniteMap):
        table = tuple(
            dst_rfd.el_of(rmap(f, src_rfd.ideal_of(i)))
            for i in src_rfd.frame.elements()
        )
        return FiniteMap(src_rfd.wb, dst_rfd.wb, table)
    rules = []
    for kind, payload in src_rfd.seg_descs:
        if kind == "prin_block":
            rule = f.rules[payload]
            exc = tuple(
                (m, dst_rfd.el_of(kappa(f.dst, v))) for m, v in rule.exceptions
            )
            if rule.tail.kind == CONST:
                tail = Tail.constant(dst_rfd.el_of(kappa(f.dst, rule.tail.const)))
            else:
                # omega values of the target are reflexive, so their
                # approximant ideals are principal and sit in the matching
                # block of the target ideal frame
                probe = dst_rfd.el_of(Prin(f.dst, El(rule.tail.seg, 0)))
                tail = Tail.affine(probe.seg, rule.tail.a, rule.tail.b)
            rules.append(SegRule(tail, exc))
        elif kind == "prin":
            ideal = rmap(f, Prin(f.src, payload))
            rules.append(SegRule(Tail.constant(dst_rfd.el_of(ideal))))
        else:
            ideal = rmap(f, BelowLim(f.src, payload))
            rules.append(SegRule(Tail.constant(dst_rfd.el_of(ideal))))
    return ChainMap(src_rfd.wb, dst_rfd.wb, tuple(rules))


# -- exhaustive enumeration (finite frames) ---------------------------------


def enumerate_proxhoms(src: FiniteProximity, dst: FiniteProximity) -> list[FiniteMap]:
    """All valid proximity homomorphisms between two small finite frames."""
    n, m = src.frame.n, dst.frame.n
    out = []
    for code in range(m**n):
        table = []
        c = code
        for _ in range(n):
            table.append(c % m)
            c //= m
        f = FiniteMap(src, dst, tuple(table))
        if validate_proxhom(f).ok:
            out.append(f)
    return out
