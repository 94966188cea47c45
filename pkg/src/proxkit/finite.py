"""Finite frames (= finite distributive lattices) from explicit data.

Frames are stored with a precomputed bit-matrix order and full meet/join
tables, so every lattice operation is a table lookup.  Elements are the
canonical indices 0..n-1, ordered topologically by leq with ties broken
by name.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

import numpy as np

from .errors import (
    NoBounds,
    NotALattice,
    NotAPoset,
    NotATopology,
    NotDistributive,
    TooLarge,
)

DISTRIBUTIVITY_SCAN_LIMIT = 64


@dataclass(frozen=True)
class FiniteFrame:
    names: tuple[str, ...]
    leq_mat: tuple[tuple[bool, ...], ...]
    meet_t: tuple[tuple[int, ...], ...]
    join_t: tuple[tuple[int, ...], ...]
    bot: int
    top: int
    pseudo: tuple[int, ...]

    @property
    def n(self) -> int:
        return len(self.names)

    def elements(self) -> range:
        return range(self.n)

    def leq(self, a: int, b: int) -> bool:
        return self.leq_mat[a][b]

    def meet(self, a: int, b: int) -> int:
        return self.meet_t[a][b]

    def join(self, a: int, b: int) -> int:
        return self.join_t[a][b]

    def way_below(self, a: int, b: int) -> bool:
        # Every directed set in a finite lattice attains its supremum.
        return self.leq(a, b)

    def index(self, name: str) -> int:
        return self.names.index(name)

    def down_mask(self, a: int) -> int:
        """Bitset of the principal downset of a."""
        return sum(1 << x for x in self.elements() if self.leq(x, a))

    def covers(self) -> list[tuple[int, int]]:
        """Covering pairs (a, b): a < b with nothing strictly between."""
        out = []
        for a in self.elements():
            for b in self.elements():
                if a == b or not self.leq(a, b):
                    continue
                if not any(
                    c != a and c != b and self.leq(a, c) and self.leq(c, b)
                    for c in self.elements()
                ):
                    out.append((a, b))
        return out

    def __repr__(self):
        return f"FiniteFrame({list(self.names)})"


def _lub(leq: np.ndarray, a: int, b: int) -> int | None:
    n = leq.shape[0]
    ubs = [c for c in range(n) if leq[a, c] and leq[b, c]]
    least = [c for c in ubs if all(leq[c, d] for d in ubs)]
    return least[0] if least else None


def _glb(leq: np.ndarray, a: int, b: int) -> int | None:
    n = leq.shape[0]
    lbs = [c for c in range(n) if leq[c, a] and leq[c, b]]
    greatest = [c for c in lbs if all(leq[d, c] for d in lbs)]
    return greatest[0] if greatest else None


def build_finite_frame(names: list[str], leq_pairs: list[tuple[str, str]]) -> FiniteFrame:
    """Validate (names, leq_pairs) as a finite frame and derive all tables.

    leq_pairs may be any generating set; the reflexive-transitive closure
    is taken.  Raises NotAPoset, NotALattice, NotDistributive or NoBounds.
    """
    if len(set(names)) != len(names):
        raise NotAPoset("duplicate element ids")
    n = len(names)
    if n == 0:
        raise NoBounds("empty element list")
    idx = {name: i for i, name in enumerate(names)}
    rel = np.eye(n, dtype=bool)
    for x, y in leq_pairs:
        if x not in idx or y not in idx:
            raise NotAPoset(f"pair ({x},{y}) references an unlisted id")
        rel[idx[x], idx[y]] = True
    # transitive closure
    for k in range(n):
        rel |= np.outer(rel[:, k], rel[k, :])
    for a in range(n):
        for b in range(a + 1, n):
            if rel[a, b] and rel[b, a]:
                raise NotAPoset(f"cycle through {names[a]} and {names[b]}")

    # canonical order: topological by leq, ties by id
    order = sorted(range(n), key=lambda i: (int(rel[:, i].sum()), names[i]))
    names2 = tuple(names[i] for i in order)
    leq = rel[np.ix_(order, order)]

    bots = [a for a in range(n) if all(leq[a, b] for b in range(n))]
    tops = [a for a in range(n) if all(leq[b, a] for b in range(n))]
    if not bots or not tops:
        raise NoBounds("frame needs a global bottom and top")
    bot, top = bots[0], tops[0]

    meet_t = np.zeros((n, n), dtype=int)
    join_t = np.zeros((n, n), dtype=int)
    for a in range(n):
        for b in range(n):
            m = _glb(leq, a, b)
            j = _lub(leq, a, b)
            if m is None:
                raise NotALattice(f"no meet for ({names2[a]},{names2[b]})")
            if j is None:
                raise NotALattice(f"no join for ({names2[a]},{names2[b]})")
            meet_t[a, b] = m
            join_t[a, b] = j

    if n > DISTRIBUTIVITY_SCAN_LIMIT:
        raise TooLarge(
            f"distributivity scan rejects frames over {DISTRIBUTIVITY_SCAN_LIMIT} elements"
        )
    for a in range(n):
        for b in range(n):
            for c in range(n):
                if meet_t[a, join_t[b, c]] != join_t[meet_t[a, b], meet_t[a, c]]:
                    raise NotDistributive((names2[a], names2[b], names2[c]))

    # pseudocomplement a* = largest x with x /\ a = 0
    pseudo = []
    for a in range(n):
        xs = [x for x in range(n) if meet_t[x, a] == bot]
        best = xs[0]
        for x in xs[1:]:
            best = join_t[best, x]
        pseudo.append(int(best))

    return FiniteFrame(
        names=names2,
        leq_mat=tuple(tuple(bool(v) for v in row) for row in leq),
        meet_t=tuple(tuple(int(v) for v in row) for row in meet_t),
        join_t=tuple(tuple(int(v) for v in row) for row in join_t),
        bot=int(bot),
        top=int(top),
        pseudo=tuple(pseudo),
    )


def downset_frame(names: list[str], leq_pairs: list[tuple[str, str]]) -> FiniteFrame:
    """The frame of downsets of a finite poset, ordered by inclusion."""
    n = len(names)
    if len(set(names)) != n:
        raise NotAPoset("duplicate element ids")
    idx = {name: i for i, name in enumerate(names)}
    rel = np.eye(n, dtype=bool)
    for x, y in leq_pairs:
        if x not in idx or y not in idx:
            raise NotAPoset(f"pair ({x},{y}) references an unlisted id")
        rel[idx[x], idx[y]] = True
    for k in range(n):
        rel |= np.outer(rel[:, k], rel[k, :])
    for a in range(n):
        for b in range(a + 1, n):
            if rel[a, b] and rel[b, a]:
                raise NotAPoset(f"cycle through {names[a]} and {names[b]}")
    if n > 16:
        raise TooLarge("downset enumeration limited to posets of 16 elements")
    downs = []
    for mask in range(1 << n):
        if all(
            not (mask >> b) & 1 or (mask >> a) & 1
            for a in range(n)
            for b in range(n)
            if rel[a, b]
        ):
            downs.append(mask)
    return _frame_of_masks(names, downs)


def open_set_frame(points: list[str], opens: list[list[str]]) -> FiniteFrame:
    """The frame of open sets of a finite topology, ordered by inclusion."""
    idx = {p: i for i, p in enumerate(points)}
    masks = []
    for o in opens:
        m = 0
        for p in o:
            if p not in idx:
                raise NotATopology(o, "membership")
            m |= 1 << idx[p]
        masks.append(m)
    masks = sorted(set(masks))
    full = (1 << len(points)) - 1
    if 0 not in masks or full not in masks:
        raise NotATopology(("empty set", "whole space"), "bounds")
    mask_set = set(masks)
    for a, b in combinations(masks, 2):
        if a | b not in mask_set:
            raise NotATopology((a, b), "union")
        if a & b not in mask_set:
            raise NotATopology((a, b), "intersection")
    return _frame_of_masks(points, masks)


def _frame_of_masks(base_names: list[str], masks: list[int]) -> FiniteFrame:
    def name(mask):
        members = [base_names[i] for i in range(len(base_names)) if (mask >> i) & 1]
        return "{" + ",".join(sorted(members)) + "}"

    names = [name(m) for m in masks]
    pairs = [
        (name(a), name(b)) for a in masks for b in masks if a != b and a & b == a
    ]
    return build_finite_frame(names, pairs)


def product(f: FiniteFrame, g: FiniteFrame) -> FiniteFrame:
    """Componentwise-ordered product of two finite frames."""
    names = [f"({f.names[a]},{g.names[b]})" for a in f.elements() for b in g.elements()]
    pairs = []
    for a1 in f.elements():
        for b1 in g.elements():
            for a2 in f.elements():
                for b2 in g.elements():
                    if f.leq(a1, a2) and g.leq(b1, b2):
                        pairs.append(
                            (
                                f"({f.names[a1]},{g.names[b1]})",
                                f"({f.names[a2]},{g.names[b2]})",
                            )
                        )
    return build_finite_frame(names, pairs)


def hasse_dot(frame: FiniteFrame, title: str = "frame") -> str:
    """DOT rendering of the Hasse diagram: covering edges only,
    deterministic node and edge order."""
    lines = [f'digraph "{title}" {{', "  rankdir=BT;"]
    for i, name in enumerate(frame.names):
        lines.append(f'  n{i} [label="{name}"];')
    for a, b in sorted(frame.covers()):
        lines.append(f"  n{a} -> n{b};")
    lines.append("}")
    return "\n".join(lines) + "\n"
