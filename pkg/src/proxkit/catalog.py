"""Built-in instances, JSON codecs, and the named morphism catalog.

Instances live as data files under ``data/`` so acceptance runs are
reproducible.  The JSON formats:

instance::
    { "name": "...", "builder": "finite" | "downsets" | "topology"
                             | "product" | "chain", ... , "proximity": ... }

morphism::
    finite:  { "table": { "a": "b", ... } }
    chain:   { "blocks": [ { "exceptions": {"0": "S0.0"},
                             "tail": {"block": 1, "a": 1, "b": 0} }
                           | {"tail": "L1"} , ... ],
               "limits": "derived" | ["L1", ...] }
"""

from __future__ import annotations

import json
from importlib import resources

from .chain import El, Tail, build_chain_frame, lim, succ
from .errors import InvalidParameter, UnknownInstance
from .finite import build_finite_frame, downset_frame, open_set_frame
from .morphisms import ChainMap, FiniteMap, Morphism, SegRule, identity_map
from .proximity import (
    ChainProximity,
    FiniteProximity,
    Proximity,
    chain_proximity,
    order_proximity,
    product_proximity,
)

CATALOG_NAMES = ("two", "chain3", "diamond", "cube3", "chain-k1", "chain-k2")


# -- instance parsing ---------------------------------------------------------


def parse_instance(doc: dict) -> tuple[str, Proximity]:
    """Parse one instance document into a named proximity frame."""
    if not isinstance(doc, dict) or "builder" not in doc:
        raise InvalidParameter("instance document needs a 'builder' field")
    builder = doc["builder"]
    name = doc.get("name", builder)
    if builder == "chain":
        frame = build_chain_frame(int(doc.get("k", 1)), doc.get("names"))
        refl = doc.get("reflexive", [])
        return name, chain_proximity(frame, refl)
    if builder == "finite":
        frame = build_finite_frame(list(doc["elements"]),
                                   [tuple(p) for p in doc.get("leq", [])])
    elif builder == "downsets":
        frame = downset_frame(list(doc["elements"]),
                              [tuple(p) for p in doc.get("leq", [])])
    elif builder == "topology":
        frame = open_set_frame(list(doc["points"]), list(doc["opens"]))
    elif builder == "product":
        _, left = parse_instance(doc["left"])
        _, right = parse_instance(doc["right"])
        return name, product_proximity(left, right)
    else:
        raise InvalidParameter(f"unknown builder {builder!r}")
    return name, _finite_with_proximity(frame, doc.get("proximity", "leq"))


def _finite_with_proximity(frame, spec) -> FiniteProximity:
    if spec == "leq":
        return order_proximity(frame)
    if isinstance(spec, dict) and "pairs" in spec:
        n = frame.n
        mat = [[False] * n for _ in range(n)]
        for a, b in spec["pairs"]:
            mat[frame.index(a)][frame.index(b)] = True
        return FiniteProximity(frame, tuple(tuple(r) for r in mat))
    raise InvalidParameter(f"unknown proximity spec {spec!r}")


def instance_to_json(name: str, prox: Proximity) -> dict:
    """Serialize in the builder-normalized shape; parse-then-print is
    idempotent."""
    if isinstance(prox, ChainProximity):
        frame = prox.frame
        lims = frame.limits()
        return {
            "name": name,
            "builder": "chain",
            "k": len(lims),
            "reflexive": sorted(
                i + 1 for i, e in enumerate(lims) if e in prox.reflexive_limits
            ),
        }
    frame = prox.frame
    doc = {
        "name": name,
        "builder": "finite",
        "elements": list(frame.names),
        "leq": sorted(
            [frame.names[a], frame.names[b]] for a, b in frame.covers()
        ),
    }
    if prox.mat == frame.leq_mat:
        doc["proximity"] = "leq"
    else:
        doc["proximity"] = {
            "pairs": sorted(
                [frame.names[a], frame.names[b]] for a, b in prox.pairs()
            )
        }
    return doc


def load_instance(name_or_path: str) -> tuple[str, Proximity]:
    """A catalog name, or a path to an instance JSON file."""
    if name_or_path in CATALOG_NAMES:
        text = (
            resources.files("proxkit").joinpath(f"data/{name_or_path}.json")
            .read_text()
        )
    else:
        try:
            with open(name_or_path) as fh:
                text = fh.read()
        except OSError as exc:
            raise UnknownInstance(f"{name_or_path}: {exc}") from exc
    return parse_instance(json.loads(text))


def catalog_instances() -> dict[str, Proximity]:
    return dict(load_instance(n) for n in CATALOG_NAMES)


# -- element and morphism codecs ---------------------------------------------


def parse_element(prox: Proximity, s: str):
    if isinstance(prox, FiniteProximity):
        return prox.frame.index(s)
    frame = prox.frame
    for i, seg in enumerate(frame.segments):
        if seg.kind == "point" and seg.label == s:
            return El(i, 0)
        prefix = seg.label + "."
        if seg.kind == "omega" and s.startswith(prefix):
            return frame.check(El(i, int(s[len(prefix):])))
    raise InvalidParameter(f"no element named {s!r}")


def parse_morphism(doc: dict, src: Proximity, dst: Proximity) -> Morphism:
    if "table" in doc:
        table = [0] * src.frame.n
        for k, v in doc["table"].items():
            table[src.frame.index(k)] = parse_element(dst, v)
        return FiniteMap(src, dst, tuple(table))
    blocks = doc["blocks"]
    limits = doc.get("limits", "derived")
    rules: list[SegRule] = []
    bi = 0
    li = 0
    from .morphisms import ChainMap as _CM

    for i, seg in enumerate(src.frame.segments):
        if seg.kind == "omega":
            b = blocks[bi]
            bi += 1
            exc = tuple(
                (int(k), parse_element(dst, v))
                for k, v in sorted(b.get("exceptions", {}).items(), key=lambda kv: int(kv[0]))
            )
            t = b["tail"]
            if isinstance(t, str):
                tail = Tail.constant(parse_element(dst, t))
            else:
                block = int(t["block"])
                tail = Tail.affine(2 * block, int(t.get("a", 1)), int(t.get("b", 0)))
            rules.append(SegRule(tail, exc))
        else:
            if limits == "derived":
                # the limit value is forced by the block's supremum
                probe = _CM(src, dst, tuple(rules) + tuple(
                    SegRule(Tail.constant(dst.frame.top))
                    for _ in range(len(src.frame.segments) - len(rules))
                ))
                sup, _ = probe.block_sup(i - 1)
                rules.append(SegRule(Tail.constant(sup)))
            else:
                rules.append(SegRule(Tail.constant(parse_element(dst, limits[li]))))
                li += 1
    return ChainMap(src, dst, tuple(rules))


# -- the named morphism catalog ----------------------------------------------


def catalog_morphisms() -> dict[str, Morphism]:
    """The named maps exercised by the law suites.

    On the one-block chain: identity, doubling, a shift that fixes bottom,
    and the join-breaking collapse h.  On the two-block chain: the pair
    witnessing that star-composition differs from plain composition.
    """
    insts = catalog_instances()
    p1: ChainProximity = insts["chain-k1"]
    p2: ChainProximity = insts["chain-k2"]
    f1, f2 = p1.frame, p2.frame
    L1_1 = lim(f1, 1)
    out: dict[str, Morphism] = {
        "chain-id": identity_map(p1),
        "chain-double": ChainMap(p1, p1, (
            SegRule(Tail.affine(0, 2, 0)),
            SegRule(Tail.constant(L1_1)),
        )),
        # n -> n+3 relocated at 0 to keep the bottom fixed
        "chain-shift3": ChainMap(p1, p1, (
            SegRule(Tail.affine(0, 1, 3), exceptions=((0, f1.bot),)),
            SegRule(Tail.constant(L1_1)),
        )),
        "chain-h": ChainMap(p1, p1, (
            SegRule(Tail.constant(f1.bot)),
            SegRule(Tail.constant(L1_1)),
        )),
        # star-vs-compose witnesses on the two-block chain
        "k2-f": ChainMap(p2, p2, (
            SegRule(Tail.affine(2, 1, 0), exceptions=((0, f2.bot),)),
            SegRule(Tail.constant(f2.top)),
            SegRule(Tail.constant(f2.top)),
            SegRule(Tail.constant(f2.top)),
        )),
        "k2-g": ChainMap(p2, p2, (
            SegRule(Tail.constant(f2.bot)),
            SegRule(Tail.constant(f2.bot)),
            SegRule(Tail.constant(succ(f2, 0, 0))),
            SegRule(Tail.constant(f2.top)),
        )),
    }
    for name in ("two", "chain3", "diamond", "cube3"):
        out[f"{name}-id"] = identity_map(insts[name])
    return out
