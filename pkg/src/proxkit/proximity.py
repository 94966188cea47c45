"""Proximity relations on effective frames.

A proximity is a binary relation finer than the order that forms a bounded
sublattice of L x L, is closed under weakening, interpolates, and
approximates every element from below.  Finite relations are bit matrices
and are checked exhaustively; chain relations are described by the set of
relation-reflexive limit points and are checked by case analysis over
element classes.

On a chain every element with an immediate predecessor is forced to be
relation-reflexive (its set of approximants must attain it), and weakening
then forces every strict pair into the relation.  The reflexive-limit set
is therefore the full degree of freedom for chain proximities.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

from .chain import OMEGA, ChainLikeFrame, El, ElementFamily, Tail
from .errors import InvalidReflexiveSet, MalformedRelation, TooLarge
from .finite import FiniteFrame
from .reports import FAIL, PASS, SYMBOLIC, AxiomReport, LawReport, Verdict, law_fail, law_pass


@dataclass(frozen=True)
class FiniteProximity:
    frame: FiniteFrame
    mat: tuple[tuple[bool, ...], ...]

    def rel(self, a: int, b: int) -> bool:
        return self.mat[a][b]

    def reflexive(self, a: int) -> bool:
        return self.mat[a][a]

    def pairs(self):
        n = self.frame.n
        return [(a, b) for a in range(n) for b in range(n) if self.mat[a][b]]

    def interpolant(self, a: int, b: int) -> int:
        for c in self.frame.elements():
            if self.rel(a, c) and self.rel(c, b):
                return c
        raise MalformedRelation(f"no interpolant for ({a},{b})")

    def label(self, a: int) -> str:
        return self.frame.names[a]


@dataclass(frozen=True)
class ChainProximity:
    """Strict pairs plus reflexivity everywhere except at the limit points
    outside `reflexive_limits`."""

    frame: ChainLikeFrame
    reflexive_limits: frozenset[El]

    def __post_init__(self):
        lims = set(self.frame.limits())
        if not set(self.reflexive_limits) <= lims:
            raise MalformedRelation("reflexive set contains non-limit elements")

    def rel(self, a: El, b: El) -> bool:
        self.frame.check(a), self.frame.check(b)
        return a < b or (a == b and self.reflexive(a))

    def reflexive(self, a: El) -> bool:
        return not self.frame.is_limit(a) or a in self.reflexive_limits

    def interpolant(self, a: El, b: El) -> El:
        if self.reflexive(a):
            return a
        # a is a non-reflexive limit and a < b; its successor works
        return self.frame.successor_of(a)

    def label(self, a: El) -> str:
        return self.frame.label(a)


Proximity = FiniteProximity | ChainProximity


def order_proximity(frame) -> Proximity:
    """The order itself as a proximity (always valid)."""
    if isinstance(frame, FiniteFrame):
        return FiniteProximity(frame, frame.leq_mat)
    return ChainProximity(frame, frozenset(frame.limits()))


def chain_proximity(frame: ChainLikeFrame, reflexive_blocks) -> ChainProximity:
    """Chain proximity from limit indices i (meaning the i-th limit point).

    The top limit must be reflexive, otherwise the relation misses (1,1).
    """
    lims = frame.limits()
    chosen = set()
    for i in reflexive_blocks:
        if not (1 <= i <= len(lims)):
            raise InvalidReflexiveSet(f"limit index {i} out of range 1..{len(lims)}")
        chosen.add(lims[i - 1])
    if frame.is_limit(frame.top) and frame.top not in chosen:
        raise InvalidReflexiveSet("top limit must be in the reflexive set")
    return ChainProximity(frame, frozenset(chosen))


def product_proximity(p: FiniteProximity, q: FiniteProximity):
    """Componentwise proximity on the product of two finite frames."""
    from .finite import product as fproduct

    pf = fproduct(p.frame, q.frame)
    pos = {name: i for i, name in enumerate(pf.names)}
    n = pf.n
    mat = [[False] * n for _ in range(n)]
    for a1 in p.frame.elements():
        for b1 in q.frame.elements():
            for a2 in p.frame.elements():
                for b2 in q.frame.elements():
                    if p.rel(a1, a2) and q.rel(b1, b2):
                        i = pos[f"({p.frame.names[a1]},{q.frame.names[b1]})"]
                        j = pos[f"({p.frame.names[a2]},{q.frame.names[b2]})"]
                        mat[i][j] = True
    return FiniteProximity(pf, tuple(tuple(r) for r in mat))


def well_inside(frame: FiniteFrame):
    """The relation a* v b = 1, returned as a candidate with its report.

    On most finite frames it fails approximation unless it equals the
    order, so it is not certified as a proximity.
    """
    n = frame.n
    mat = tuple(
        tuple(frame.join(frame.pseudo[a], b) == frame.top for b in range(n))
        for a in range(n)
    )
    cand = FiniteProximity(frame, mat)
    return cand, validate_proximity(cand)


# -- axiom checking --------------------------------------------------------


def validate_proximity(prox: Proximity) -> AxiomReport:
    if isinstance(prox, FiniteProximity):
        return _validate_finite(prox)
    return _validate_chain(prox)


def _validate_finite(p: FiniteProximity) -> AxiomReport:
    f = p.frame
    n = f.n
    if len(p.mat) != n or any(len(row) != n for row in p.mat):
        raise MalformedRelation("relation matrix does not match the frame size")
    names = f.names
    axioms: list[tuple[str, Verdict]] = []

    v = Verdict(PASS)
    for a in range(n):
        for b in range(n):
            if p.mat[a][b] and not f.leq(a, b):
                v = Verdict(FAIL, (names[a], names[b]), "pair not below the order")
                break
        if not v.ok:
            break
    axioms.append(("finer-than-leq", v))

    v = Verdict(PASS)
    if not p.mat[f.bot][f.bot] or not p.mat[f.top][f.top]:
        missing = names[f.bot] if not p.mat[f.bot][f.bot] else names[f.top]
        v = Verdict(FAIL, (missing, missing), "bounds missing from the relation")
    else:
        pairs = p.pairs()
        for (a, b), (c, d) in combinations(pairs, 2):
            if not p.mat[f.meet(a, c)][f.meet(b, d)]:
                v = Verdict(FAIL, (names[a], names[b], names[c], names[d]), "meet closure")
                break
            if not p.mat[f.join(a, c)][f.join(b, d)]:
                v = Verdict(FAIL, (names[a], names[b], names[c], names[d]), "join closure")
                break
    axioms.append(("sublattice", v))

    v = Verdict(PASS)
    for b in range(n):
        for c in range(n):
            if not p.mat[b][c]:
                continue
            for a in range(n):
                if not f.leq(a, b):
                    continue
                for d in range(n):
                    if f.leq(c, d) and not p.mat[a][d]:
                        v = Verdict(FAIL, (names[a], names[b], names[c], names[d]))
                        break
                if not v.ok:
                    break
            if not v.ok:
                break
        if not v.ok:
            break
    axioms.append(("weakening", v))

    v = Verdict(PASS)
    for a in range(n):
        for b in range(n):
            if p.mat[a][b] and not any(p.mat[a][c] and p.mat[c][b] for c in range(n)):
                v = Verdict(FAIL, (names[a], names[b]))
                break
        if not v.ok:
            break
    axioms.append(("interpolation", v))

    v = Verdict(PASS)
    for a in range(n):
        j = f.bot
        for b in range(n):
            if p.mat[b][a]:
                j = f.join(j, b)
        if j != a:
            v = Verdict(FAIL, (names[a], names[j]), "join of approximants differs")
            break
    axioms.append(("approximation", v))

    collapse = p.mat == f.leq_mat
    return AxiomReport(tuple(axioms), collapse=collapse)


def _validate_chain(p: ChainProximity) -> AxiomReport:
    """Case analysis over element classes, guarded by a representative scan."""
    f = p.frame
    reps = f.class_representatives(depth=3)
    axioms: list[tuple[str, Verdict]] = []

    # (1a) finer than the order: rel only ever holds on a <= b pairs.
    v = Verdict(SYMBOLIC, note="relation is strict pairs plus reflexive classes")
    for a in reps:
        for b in reps:
            if p.rel(a, b) and not f.leq(a, b):
                v = Verdict(FAIL, (f.label(a), f.label(b)))
    axioms.append(("finer-than-leq", v))

    # (1b) bounded sublattice: bot is never a limit; top must be reflexive.
    if not p.reflexive(f.top):
        v = Verdict(FAIL, (f.label(f.top), f.label(f.top)), "top pair missing")
    else:
        # min/max of related pairs stay related: scan representatives,
        # the general case follows the same split on reflexivity.
        v = Verdict(SYMBOLIC, note="min/max closure per reflexivity class")
        for (a, b) in _rep_pairs(p, reps):
            for (c, d) in _rep_pairs(p, reps):
                if not p.rel(min(a, c), min(b, d)) or not p.rel(max(a, c), max(b, d)):
                    v = Verdict(FAIL, (f.label(a), f.label(b), f.label(c), f.label(d)))
    axioms.append(("sublattice", v))

    # (2) weakening: a <= b rel c <= d gives a rel d.  The only way a rel d
    # can fail with a <= d is a = d at a non-reflexive limit, which forces
    # a = b = c = d and contradicts b rel c.
    v = Verdict(SYMBOLIC, note="fails only at a=d non-reflexive, impossible")
    for (b, c) in _rep_pairs(p, reps):
        for a in reps:
            for d in reps:
                if a <= b and c <= d and not p.rel(a, d):
                    v = Verdict(FAIL, (f.label(a), f.label(b), f.label(c), f.label(d)))
    axioms.append(("weakening", v))

    # (3) interpolation: reflexive a interpolates through itself; a
    # non-reflexive limit a < b interpolates through its successor.
    v = Verdict(SYMBOLIC, note="witness: a itself, or the successor of a")
    for (a, b) in _rep_pairs(p, reps):
        c = p.interpolant(a, b)
        if not (p.rel(a, c) and p.rel(c, b)):
            v = Verdict(FAIL, (f.label(a), f.label(b)))
    axioms.append(("interpolation", v))

    # (4) approximation: reflexive elements approximate themselves; a
    # non-reflexive limit is the exact supremum of the block below it.
    v = Verdict(SYMBOLIC, note="suprema computed from the tail rule")
    for a in reps:
        if p.reflexive(a):
            continue
        fam = ElementFamily(f, Tail.affine(a.seg - 1, 1, 0))
        if fam.sup() != a:
            v = Verdict(FAIL, (f.label(a), f.label(fam.sup())))
    axioms.append(("approximation", v))

    collapse = set(p.reflexive_limits) == set(f.limits())
    return AxiomReport(tuple(axioms), collapse=collapse)


def _rep_pairs(p: ChainProximity, reps: list[El]):
    return [(a, b) for a in reps for b in reps if p.rel(a, b)]


# -- finite collapse certificate -------------------------------------------


def certify_finite_collapse(frame: FiniteFrame) -> LawReport:
    """Exhaustively certify that the order is the only proximity on a
    finite frame.

    Enumerates every sub-relation of leq containing (bot,bot) and
    (top,top) and checks the axioms; reports a counterexample relation if
    one other than leq survives.
    """
    if frame.n > 12:
        raise TooLarge("collapse certification is limited to 12 elements")
    instance = f"finite:{','.join(frame.names)}"
    free = [
        (a, b)
        for a in frame.elements()
        for b in frame.elements()
        if frame.leq(a, b) and (a, b) not in ((frame.bot, frame.bot), (frame.top, frame.top))
    ]
    if len(free) > 24:
        raise TooLarge(f"relation search space 2^{len(free)} is over budget")
    survivors = 0
    n = frame.n
    for bits in range(1 << len(free)):
        mat = [[False] * n for _ in range(n)]
        mat[frame.bot][frame.bot] = True
        mat[frame.top][frame.top] = True
        for i, (a, b) in enumerate(free):
            if (bits >> i) & 1:
                mat[a][b] = True
        cand = FiniteProximity(frame, tuple(tuple(r) for r in mat))
        if validate_proximity(cand).ok:
            survivors += 1
            if cand.mat != frame.leq_mat:
                witness = [
                    (frame.names[a], frame.names[b])
                    for a in range(n)
                    for b in range(n)
                    if mat[a][b]
                ]
                return law_fail(
                    "collapse", instance, witness=tuple(witness),
                    samples=1 << len(free), note="non-order proximity found",
                )
    if survivors != 1:
        return law_fail("collapse", instance, samples=1 << len(free),
                        note="the order itself did not survive")
    return law_pass("collapse", instance, samples=1 << len(free),
                    note="only the order satisfies the axioms")
