"""JSON ring descriptors.

The on-disk format used by the CLI:

    {"zmod": 6}
    {"matrix": {"base": {"zmod": 2}, "k": 2}}
    {"product": [{"zmod": 2}, {"zmod": 4}]}
    {"corner": {"parent": ..., "e": <element literal>}}
    {"quotient": {"parent": ..., "ideal_gens": [<element literal>, ...]}}
    {"table": {"size": 3, "add": [[...]], "mul": [[...]], "one": 1,
               "labels": [...], "name": "..."}}

Element literals are integers (ZMod, Table indices), nested arrays (matrices),
arrays (product tuples), or parent literals (corner, quotient coset reps).
"""

from __future__ import annotations

import json

from .rings import (
    CornerRing,
    IdealData,
    MatrixRing,
    ProductRing,
    QuotientRing,
    Ring,
    TableRing,
    ZMod,
)


def ring_from_descriptor(obj) -> Ring:
    if not isinstance(obj, dict) or len(obj) != 1:
        raise ValueError(f"ring descriptor must be a single-key object, got {obj!r}")
    kind, body = next(iter(obj.items()))
    if kind == "zmod":
        if not isinstance(body, int):
            raise ValueError("zmod takes an integer modulus")
        return ZMod(body)
    if kind == "matrix":
        base = ring_from_descriptor(body["base"])
        if not isinstance(base, ZMod):
            raise ValueError("matrix base must be a zmod ring")
        return MatrixRing(base, int(body["k"]))
    if kind == "product":
        if not isinstance(body, list) or not body:
            raise ValueError("product takes a non-empty list of factors")
        return ProductRing(ring_from_descriptor(f) for f in body)
    if kind == "corner":
        parent = ring_from_descriptor(body["parent"])
        e = parent.element_from_json(body["e"])
        return CornerRing(parent, e)
    if kind == "quotient":
        parent = ring_from_descriptor(body["parent"])
        gens = [parent.element_from_json(g) for g in body["ideal_gens"]]
        return QuotientRing(parent, IdealData.from_generators(parent, gens))
    if kind == "table":
        size = int(body["size"])
        add = body["add"]
        mul = body["mul"]
        if len(add) != size or len(mul) != size:
            raise ValueError("table size does not match the given tables")
        return TableRing(
            add, mul, int(body["one"]),
            labels=body.get("labels"), name=body.get("name"),
        )
    raise ValueError(f"unknown ring descriptor kind {kind!r}")


def load_ring(path: str) -> Ring:
    with open(path, "r", encoding="utf-8") as fh:
        return ring_from_descriptor(json.load(fh))


def dump_ring(ring: Ring, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(ring.describe(), fh, indent=2, sort_keys=True)
        fh.write("\n")
