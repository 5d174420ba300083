#!/usr/bin/env python3
"""Regenerate data/: ring descriptor files plus the corpus manifest.

Every expectation in the manifest is re-derived by running the library at
generation time (classification flags via classify, chain outcomes via
exchange_chain); nothing is hand-entered.  Each entry carries a provenance
tag recording exactly that.
"""

from __future__ import annotations

import json
import os
import sys

sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", "src"))

from exchange_kit import (  # noqa: E402
    MatrixRing, ProductRing, ZMod, classify, exchange_chain, triangular_ring,
)
from exchange_kit.exchange import first_certificate_violation  # noqa: E402

DATA = os.path.join(os.path.dirname(__file__), "..", "data")

FLAG_PROVENANCE = ("re-derived at generation time: classify() exhaustive scan; "
                   "chain outcomes re-run through exchange_chain")


def corpus_rings():
    out = []
    for n in range(2, 31):
        out.append((f"zmod{n}", ZMod(n)))
    out.append(("m2f2", MatrixRing(ZMod(2), 2)))
    out.append(("m2f3", MatrixRing(ZMod(3), 2)))
    out.append(("t2f2", triangular_ring(2)))
    out.append(("z2xz4", ProductRing([ZMod(2), ZMod(4)])))
    return out


def sample_chain_families(name, ring):
    """A couple of small deterministic chain expectations per ring."""
    fams = []
    one = ring.one
    elems = ring.elements()
    # prefer splittings that exercise non-trivial idempotent hunting
    pool = [x for x in elems
            if not ring.eq(x, ring.zero) and not ring.eq(x, one)]
    for x in (pool or list(elems)):
        y = ring.sub(one, x)
        fams.append([x, y])
        if len(fams) >= 2:
            break
    return fams


def main():
    os.makedirs(DATA, exist_ok=True)
    entries = []
    for name, ring in corpus_rings():
        path = os.path.join(DATA, f"{name}.ring")
        with open(path, "w", encoding="utf-8") as fh:
            json.dump(ring.describe(), fh, indent=2, sort_keys=True)
            fh.write("\n")
        report = classify(ring)
        flags = {k: report.flags[k].value for k in report.FLAG_NAMES}
        chains = []
        for fam in sample_chain_families(name, ring):
            result = exchange_chain(ring, tuple(fam))
            ok = first_certificate_violation(result.certificate) is None
            chains.append({
                "family": [ring.element_to_json(v) for v in fam],
                "expect": "valid" if ok else "invalid",
            })
        entries.append({
            "name": name,
            "ring": f"{name}.ring",
            "expect": {"flags": flags},
            "chains": chains,
            "provenance": FLAG_PROVENANCE,
        })
    manifest = {"entries": entries}
    with open(os.path.join(DATA, "corpus.json"), "w", encoding="utf-8") as fh:
        json.dump(manifest, fh, indent=2, sort_keys=True)
        fh.write("\n")
    print(f"wrote {len(entries)} corpus entries to {os.path.abspath(DATA)}")


if __name__ == "__main__":
    main()
