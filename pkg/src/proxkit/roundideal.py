"""Round ideals and the frame they form.

A round ideal of a proximity frame is a join-closed downset in which every
member is approximated by another member.  Canonical forms keep equality
and inclusion exact:

* finite frames: a bitset over the carrier;
* chain frames: ``Prin(a)`` for a relation-reflexive element, or
  ``BelowLim(l)`` for everything strictly under a limit point.

The frame of round ideals of a chain instance is again a chain-like frame;
:func:`rframe` materializes it with a codec between its element codes and
the ideals they stand for.  Symbolic terms (finite joins, directed
families, images) are accepted as input and normalized eagerly.
"""

from __future__ import annotations

import os
from dataclasses import dataclass

from .chain import OMEGA, POINT, ChainLikeFrame, El, ElementFamily, Segment, Tail
from .errors import (
    NotDirected,
    NotStablyCompact,
    TooLarge,
    UnsupportedRepresentation,
)
from .finite import FiniteFrame
from .proximity import ChainProximity, FiniteProximity, Proximity, order_proximity

FINITE_IDEAL_ENUM_LIMIT = 14
DEFAULT_BUDGET = 10_000


def normalization_budget() -> int:
    return int(os.environ.get("PROXKIT_BUDGET", DEFAULT_BUDGET))


# -- canonical forms -------------------------------------------------------


@dataclass(frozen=True)
class FinIdeal:
    prox: FiniteProximity
    mask: int

    def __repr__(self):
        f = self.prox.frame
        members = [f.names[i] for i in f.elements() if (self.mask >> i) & 1]
        return "Ideal{" + ",".join(members) + "}"


@dataclass(frozen=True)
class Prin:
    prox: ChainProximity
    a: El

    def __post_init__(self):
        self.prox.frame.check(self.a)
        if not self.prox.reflexive(self.a):
            raise UnsupportedRepresentation(
                f"principal ideal at non-reflexive {self.prox.label(self.a)} is not round"
            )

    def __repr__(self):
        return f"Prin({self.prox.label(self.a)})"


@dataclass(frozen=True)
class BelowLim:
    prox: ChainProximity
    lim: El

    def __post_init__(self):
        if not self.prox.frame.is_limit(self.lim):
            raise UnsupportedRepresentation(
                f"{self.prox.label(self.lim)} is not a limit point"
            )

    def __repr__(self):
        return f"Below({self.prox.label(self.lim)})"


RoundIdeal = FinIdeal | Prin | BelowLim


# -- symbolic input terms ---------------------------------------------------


@dataclass(frozen=True)
class JoinFin:
    items: tuple

    def __repr__(self):
        return f"JoinFin{self.items}"


@dataclass(frozen=True)
class DirFam:
    """The directed family of principal ideals over a described sequence."""

    prox: ChainProximity
    family: ElementFamily


@dataclass(frozen=True)
class Image:
    f: object  # a validated morphism
    term: object


def normalize(term, budget: int | None = None) -> RoundIdeal:
    """Reduce a symbolic ideal term to canonical form.

    Exceeding the normalization budget raises, never returns a wrong
    answer.
    """
    if budget is None:
        budget = normalization_budget()
    state = [budget]

    def go(t):
        state[0] -= 1
        if state[0] < 0:
            raise UnsupportedRepresentation("normalization budget exceeded")
        if isinstance(t, (FinIdeal, Prin, BelowLim)):
            return t
        if isinstance(t, JoinFin):
            items = [go(x) for x in t.items]
            if not items:
                raise UnsupportedRepresentation("empty finite join")
            out = items[0]
            for x in items[1:]:
                out = ideal_join(out, x)
            return out
        if isinstance(t, DirFam):
            return _dirfam_sup(t.prox, t.family)
        if isinstance(t, Image):
            return rmap(t.f, go(t.term))
        raise UnsupportedRepresentation(f"unknown ideal term {t!r}")

    return go(term)


# -- the core maps ----------------------------------------------------------


def kappa(prox: Proximity, a) -> RoundIdeal:
    """The largest round ideal whose join is a: all approximants of a."""
    if isinstance(prox, FiniteProximity):
        mask = sum(1 << b for b in prox.frame.elements() if prox.rel(b, a))
        return FinIdeal(prox, mask)
    prox.frame.check(a)
    if prox.reflexive(a):
        return Prin(prox, a)
    return BelowLim(prox, a)


def alpha(prox: Proximity, a) -> RoundIdeal:
    """Left adjoint of the join map on a stably compact instance:
    the way-below approximants of a."""
    if not is_stably_compact(prox):
        raise NotStablyCompact("the instance has a non-compact top")
    if isinstance(prox, FiniteProximity):
        mask = sum(1 << b for b in prox.frame.elements() if prox.frame.leq(b, a))
        return FinIdeal(prox, mask)
    if prox.frame.is_limit(a):
        return BelowLim(prox, a)
    return Prin(prox, a)


def sigma(ideal: RoundIdeal):
    """The join of a canonical ideal."""
    if isinstance(ideal, FinIdeal):
        f = ideal.prox.frame
        j = f.bot
        for b in f.elements():
            if (ideal.mask >> b) & 1:
                j = f.join(j, b)
        return j
    if isinstance(ideal, Prin):
        return ideal.a
    return ideal.lim  # sup of everything strictly below a limit


def member(b, ideal: RoundIdeal) -> bool:
    if isinstance(ideal, FinIdeal):
        return bool((ideal.mask >> b) & 1)
    if isinstance(ideal, Prin):
        return ideal.prox.frame.leq(b, ideal.a)
    return b < ideal.lim


def subideal(i: RoundIdeal, j: RoundIdeal) -> bool:
    if isinstance(i, FinIdeal) and isinstance(j, FinIdeal):
        return i.mask & j.mask == i.mask
    if isinstance(i, Prin):
        return member(i.a, j)
    if isinstance(j, Prin):
        return i.lim <= j.a
    return i.lim <= j.lim


def ideal_meet(i: RoundIdeal, j: RoundIdeal) -> RoundIdeal:
    if isinstance(i, FinIdeal):
        return FinIdeal(i.prox, i.mask & j.mask)
    return i if subideal(i, j) else j  # chain ideals are totally ordered


def ideal_join(i: RoundIdeal, j: RoundIdeal) -> RoundIdeal:
    if isinstance(i, FinIdeal):
        f = i.prox.frame
        mask = 0
        for a in f.elements():
            if (i.mask >> a) & 1:
                for b in f.elements():
                    if (j.mask >> b) & 1:
                        mask |= 1 << f.join(a, b)
        return FinIdeal(i.prox, mask)
    return j if subideal(i, j) else i


def dir_sup(family) -> RoundIdeal:
    """Supremum of a finitely-described directed family of round ideals.

    Accepts either an explicit list of canonical ideals (which must be
    directed) or a DirFam term.
    """
    if isinstance(family, DirFam):
        return _dirfam_sup(family.prox, family.family)
    items = list(family)
    if not items:
        raise NotDirected("empty family")
    if isinstance(items[0], FinIdeal):
        for i in items:
            for j in items:
                if not any(subideal(i, k) and subideal(j, k) for k in items):
                    raise NotDirected(f"no bound for {i!r}, {j!r} within the family")
        top = items[0]
        for i in items[1:]:
            if subideal(top, i):
                top = i
            elif not subideal(i, top):
                raise NotDirected("family has no maximum")
        return top
    out = items[0]
    for i in items[1:]:  # chain ideals are totally ordered
        if subideal(out, i):
            out = i
    return out


def _dirfam_sup(prox: ChainProximity, fam: ElementFamily) -> RoundIdeal:
    # union of Prin(fam(n)); each generator must itself be round
    reps = [fam.value(n) for n, _ in fam.exceptions] + [
        fam.tail.value(n) for n in range(2)
    ]
    if fam.tail.kind == "const":
        reps.append(fam.tail.const)
    for v in reps:
        if not prox.reflexive(v):
            raise UnsupportedRepresentation(
                f"generator Prin({prox.label(v)}) is not round"
            )
    s = fam.sup()
    if fam.attained():
        return Prin(prox, s)
    return BelowLim(prox, s)


def way_below_ideals(i: RoundIdeal, j: RoundIdeal) -> bool:
    """i << j in the frame of round ideals: some member of j bounds i."""
    if isinstance(i, FinIdeal):
        return member(sigma(i), j)
    if isinstance(j, Prin):
        return i.a <= j.a if isinstance(i, Prin) else i.lim <= j.a
    # j = BelowLim(l): need a member strictly under the limit bounding i
    if isinstance(i, Prin):
        return i.a < j.lim
    return i.lim < j.lim


def rmap(f, ideal: RoundIdeal) -> RoundIdeal:
    """Functor action on ideals: all approximants of images of members.

    `f` is any validated monotone morphism exposing apply() and
    block_sup(); the result is computed by pushing the canonical
    description through f and normalizing.
    """
    dst = f.dst
    if isinstance(ideal, FinIdeal):
        return kappa(dst, f.apply(sigma(ideal)))
    if isinstance(ideal, Prin):
        return kappa(dst, f.apply(ideal.a))
    block = ideal.lim.seg - 1
    sup, attained = f.block_sup(block)
    if attained:
        return kappa(dst, sup)
    return BelowLim(dst, sup)


def is_stably_compact(prox: Proximity) -> bool:
    """Every element is the join of its way-below set and the top is
    compact; finite instances always qualify."""
    if isinstance(prox, FiniteProximity):
        return True
    f = prox.frame
    if f.is_limit(f.top):
        return False
    for a in f.class_representatives():
        if f.is_limit(a):
            fam = ElementFamily(f, Tail.affine(a.seg - 1, 1, 0))
            if fam.sup() != a:
                return False
    return True


def retag(ideal: RoundIdeal, prox: Proximity) -> RoundIdeal:
    """The same set of elements viewed as an ideal of another proximity on
    the same frame (only legal when it stays round there)."""
    if isinstance(ideal, FinIdeal):
        return FinIdeal(prox, ideal.mask)
    if isinstance(ideal, Prin):
        return Prin(prox, ideal.a)
    return BelowLim(prox, ideal.lim)


# -- the frame of round ideals ---------------------------------------------


@dataclass(frozen=True)
class RFrameData:
    """The frame of round ideals with its way-below proximity and a codec
    between frame elements and canonical ideals."""

    base: Proximity
    frame: FiniteFrame | ChainLikeFrame
    wb: Proximity
    # chain codec: one descriptor per new segment
    seg_descs: tuple = ()
    # finite codec: ideal bitmask per element index
    masks: tuple[int, ...] = ()

    def ideal_of(self, el) -> RoundIdeal:
        if isinstance(self.base, FiniteProximity):
            return FinIdeal(self.base, self.masks[el])
        kind, payload = self.seg_descs[el.seg]
        if kind == "prin_block":
            return Prin(self.base, El(payload, el.n))
        if kind == "prin":
            return Prin(self.base, payload)
        return BelowLim(self.base, payload)

    def el_of(self, ideal: RoundIdeal):
        if isinstance(ideal, FinIdeal):
            return self.masks.index(ideal.mask)
        if isinstance(ideal, BelowLim):
            return El(self.seg_descs.index(("below", ideal.lim)), 0)
        a = ideal.a
        for s, (kind, payload) in enumerate(self.seg_descs):
            if kind == "prin_block" and payload == a.seg:
                return El(s, a.n)
            if kind == "prin" and payload == a:
                return El(s, 0)
        raise UnsupportedRepresentation(f"{ideal!r} is not in the classification")

    def class_ideals(self, depth: int = 3) -> list[RoundIdeal]:
        """One canonical ideal per element class of the ideal frame."""
        if isinstance(self.base, FiniteProximity):
            return [FinIdeal(self.base, m) for m in self.masks]
        return [self.ideal_of(e) for e in self.frame.class_representatives(depth)]


def rframe(prox: Proximity) -> RFrameData:
    """Materialize the frame of round ideals of a validated proximity."""
    if isinstance(prox, FiniteProximity):
        return _rframe_finite(prox)
    return _rframe_chain(prox)


def _rframe_finite(prox: FiniteProximity) -> RFrameData:
    f = prox.frame
    if f.n > FINITE_IDEAL_ENUM_LIMIT:
        raise TooLarge(
            f"round-ideal enumeration limited to {FINITE_IDEAL_ENUM_LIMIT} elements"
        )
    masks = []
    for mask in range(1, 1 << f.n):
        if not (mask >> f.bot) & 1:
            continue
        if not _is_round_downset(prox, mask):
            continue
        masks.append(mask)
    masks.sort(key=lambda m: (bin(m).count("1"), m))
    names = []
    for m in masks:
        mx = sigma(FinIdeal(prox, m))
        if m == f.down_mask(mx):
            names.append(f"dn({f.names[mx]})")
        else:
            members = ",".join(f.names[i] for i in f.elements() if (m >> i) & 1)
            names.append("{" + members + "}")
    pairs = [
        (names[i], names[j])
        for i, mi in enumerate(masks)
        for j, mj in enumerate(masks)
        if i != j and mi & mj == mi
    ]
    from .finite import build_finite_frame

    frame = build_finite_frame(names, pairs)
    order = tuple(masks[names.index(nm)] for nm in frame.names)
    return RFrameData(
        base=prox, frame=frame, wb=order_proximity(frame), masks=order
    )


def _is_round_downset(prox: FiniteProximity, mask: int) -> bool:
    f = prox.frame
    members = [a for a in f.elements() if (mask >> a) & 1]
    for a in members:
        for b in f.elements():
            if f.leq(b, a) and not (mask >> b) & 1:
                return False  # not a downset
    for a in members:
        for b in members:
            if not (mask >> f.join(a, b)) & 1:
                return False  # not join-closed
    for a in members:
        if not any(prox.rel(a, b) for b in members):
            return False  # not round
    return True


def _rframe_chain(prox: ChainProximity) -> RFrameData:
    f = prox.frame
    segs: list[Segment] = []
    descs: list[tuple] = []
    for i, s in enumerate(f.segments):
        e = El(i, 0)
        if s.kind == OMEGA:
            if f.is_limit(e):
                raise UnsupportedRepresentation(
                    "omega block directly after an omega block is unsupported"
                )
            segs.append(Segment(OMEGA, f"P[{s.label}]"))
            descs.append(("prin_block", i))
        elif f.is_limit(e):
            segs.append(Segment(POINT, f"B[{s.label}]"))
            descs.append(("below", e))
            if e in prox.reflexive_limits:
                segs.append(Segment(POINT, f"P[{s.label}]"))
                descs.append(("prin", e))
        else:
            segs.append(Segment(POINT, f"P[{s.label}]"))
            descs.append(("prin", e))
    frame = ChainLikeFrame(tuple(segs))
    # the way-below relation has no reflexive limit points: each new limit
    # is a BelowLim ideal, never bounded by one of its own members
    wb = ChainProximity(frame, frozenset())
    return RFrameData(base=prox, frame=frame, wb=wb, seg_descs=tuple(descs))


def ideal_frame(frame) -> RFrameData:
    """The frame of all ideals: round ideals for the order proximity."""
    return rframe(order_proximity(frame))
