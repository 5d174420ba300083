"""Materialized operation tables for a finite ring.

The scan kernels work on integer indices into the ring's canonical element
order.  Tables are built once per ring and cached; numpy arrays feed the
compiled backend, plain nested lists feed the pure one.
"""

from __future__ import annotations

import numpy as np


class RingTables:
    __slots__ = (
        "elements", "index", "add", "mul", "neg",
        "zero", "one", "_add_list", "_mul_list", "_neg_list",
        "inv_cache", "idem_cache",
    )

    def __init__(self, elements, index, add, mul, neg, zero, one):
        self.elements = elements
        self.index = index
        self.add = add
        self.mul = mul
        self.neg = neg
        self.zero = zero
        self.one = one
        self._add_list = None
        self._mul_list = None
        self._neg_list = None
        self.inv_cache = None
        self.idem_cache = None

    @property
    def n(self):
        return len(self.elements)

    def add_rows(self):
        if self._add_list is None:
            self._add_list = self.add.tolist()
        return self._add_list

    def mul_rows(self):
        if self._mul_list is None:
            self._mul_list = self.mul.tolist()
        return self._mul_list

    def neg_row(self):
        if self._neg_list is None:
            self._neg_list = self.neg.tolist()
        return self._neg_list


def build_tables(ring) -> RingTables:
    """Materialize index tables from any object with the ring method surface."""
    elems = tuple(ring.elements())
    n = len(elems)
    index = {x: i for i, x in enumerate(elems)}
    add = np.empty((n, n), dtype=np.int32)
    mul = np.empty((n, n), dtype=np.int32)
    neg = np.empty(n, dtype=np.int32)
    radd = ring.add
    rmul = ring.mul
    for i, a in enumerate(elems):
        neg[i] = index[ring.neg(a)]
        arow = add[i]
        mrow = mul[i]
        for j, b in enumerate(elems):
            arow[j] = index[radd(a, b)]
            mrow[j] = index[rmul(a, b)]
    return RingTables(
        elements=elems,
        index=index,
        add=add,
        mul=mul,
        neg=neg,
        zero=index[ring.zero],
        one=index[ring.one],
    )
