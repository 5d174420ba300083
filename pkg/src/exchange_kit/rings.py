"""Finite unital rings with canonical element encodings.

Every constructor yields a ring whose elements are hashable Python values in
a fixed canonical form, so `==` on encodings is ring equality:

    ZMod(n)        least nonnegative residues 0..n-1
    MatrixRing     row-major tuples of tuples over a ZMod base
    ProductRing    tuples, one slot per factor
    CornerRing     the parent encoding of e*x*e
    QuotientRing   the least (first in parent order) coset representative
    TableRing      integer indices into explicit operation tables

Enumeration order is deterministic and is the tie-breaker for every
exhaustive search in the package.  Rings are immutable and safe to share
between threads; tables and element lists are cached behind a lock.

>>> R = ZMod(6)
>>> R.idempotents()
(0, 1, 3, 4)
>>> R.units()
(1, 5)
"""

from __future__ import annotations

import itertools
import math
import threading
from collections import namedtuple

import numpy as np

from . import _kernels, config, linalg
from .errors import CapExceeded, MalformedTable, NotIdempotent

RingOps = namedtuple("RingOps", ["add", "neg", "mul", "zero", "one", "eq"])


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    for d in range(2, int(math.isqrt(n)) + 1):
        if n % d == 0:
            return False
    return True


class Ring:
    """Common surface for all finite ring variants."""

    name = "ring"

    def __init__(self):
        self._lock = threading.Lock()
        self._elements = None
        self._tables = None

    # --- subclass responsibilities -------------------------------------
    #   order, zero, one, add, neg, mul, is_element,
    #   describe, element_to_json, element_from_json, _enumerate

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def eq(self, a, b) -> bool:
        return a == b

    def ops(self) -> RingOps:
        return RingOps(self.add, self.neg, self.mul, self.zero, self.one, self.eq)

    def elements(self, cap: int | None = None) -> tuple:
        limit = cap if cap is not None else config.enumeration_cap()
        if self.order > limit:
            raise CapExceeded(self.order, limit)
        if self._elements is None:
            with self._lock:
                if self._elements is None:
                    self._elements = tuple(self._enumerate())
        return self._elements

    def tables(self) -> _kernels.RingTables:
        if self._tables is None:
            elems = self.elements()  # cap check happens here
            with self._lock:
                if self._tables is None:
                    assert elems is not None
                    self._tables = _kernels.build_tables(self)
        return self._tables

    # --- derived helpers ------------------------------------------------

    def is_idempotent(self, x) -> bool:
        return self.eq(self.mul(x, x), x)

    def idempotents(self) -> tuple:
        t = self.tables()
        return tuple(t.elements[i] for i in _kernels.idempotent_indices(t))

    def units(self) -> tuple:
        t = self.tables()
        return tuple(t.elements[i] for i in _kernels.unit_indices(t))

    def inverse(self, x):
        """Two-sided inverse of x, or None."""
        t = self.tables()
        j = _kernels.inverse_table(t)[t.index[x]]
        return None if j < 0 else t.elements[j]

    def is_unit(self, x) -> bool:
        return self.inverse(x) is not None

    def power(self, x, n: int):
        if n < 0:
            raise ValueError("negative power")
        out = self.one
        for _ in range(n):
            out = self.mul(out, x)
        return out

    def sum_many(self, xs):
        out = self.zero
        for x in xs:
            out = self.add(out, x)
        return out

    def element_repr(self, x) -> str:
        return repr(x)

    def __repr__(self):
        return f"<{type(self).__name__} {self.name}>"

    # structural identity: two rings with the same descriptor are the same ring
    def _key(self):
        import json

        return json.dumps(self.describe(), sort_keys=True)

    def __eq__(self, other):
        return isinstance(other, Ring) and self._key() == other._key()

    def __hash__(self):
        return hash(self._key())


class ZMod(Ring):
    """Integers modulo n, elements 0..n-1."""

    def __init__(self, n: int):
        if n < 1:
            raise ValueError("modulus must be positive")
        super().__init__()
        self.n = n
        self.order = n
        self.zero = 0
        self.one = 1 % n
        self.name = f"Z/{n}"

    def add(self, a, b):
        return (a + b) % self.n

    def neg(self, a):
        return (-a) % self.n

    def mul(self, a, b):
        return (a * b) % self.n

    def _enumerate(self):
        return range(self.n)

    def is_element(self, x) -> bool:
        return isinstance(x, int) and 0 <= x < self.n

    def inverse(self, x):
        if math.gcd(x, self.n) != 1:
            return None
        return pow(x, -1, self.n) if self.n > 1 else 0

    def describe(self):
        return {"zmod": self.n}

    def element_to_json(self, x):
        return x

    def element_from_json(self, obj):
        if not isinstance(obj, int):
            raise ValueError(f"expected integer residue, got {obj!r}")
        return obj % self.n


class MatrixRing(Ring):
    """k-by-k matrices over a ZMod base, encoded as row-major tuples."""

    def __init__(self, base: ZMod, k: int):
        if not isinstance(base, ZMod):
            raise ValueError("matrix base must be ZMod(n)")
        if k < 1:
            raise ValueError("matrix size must be at least 1")
        super().__init__()
        self.base = base
        self.k = k
        self.order = base.order ** (k * k)
        self.zero = tuple(tuple(0 for _ in range(k)) for _ in range(k))
        self.one = tuple(
            tuple(base.one if i == j else 0 for j in range(k)) for i in range(k)
        )
        self.name = f"M{k}(Z/{base.n})"

    def add(self, a, b):
        n = self.base.n
        return tuple(
            tuple((x + y) % n for x, y in zip(ra, rb)) for ra, rb in zip(a, b)
        )

    def neg(self, a):
        n = self.base.n
        return tuple(tuple((-x) % n for x in row) for row in a)

    def mul(self, a, b):
        n = self.base.n
        k = self.k
        return tuple(
            tuple(
                sum(a[i][t] * b[t][j] for t in range(k)) % n for j in range(k)
            )
            for i in range(k)
        )

    def _enumerate(self):
        k = self.k
        for flat in itertools.product(range(self.base.n), repeat=k * k):
            yield tuple(flat[i * k : (i + 1) * k] for i in range(k))

    def is_element(self, x) -> bool:
        return (
            isinstance(x, tuple)
            and len(x) == self.k
            and all(
                isinstance(row, tuple)
                and len(row) == self.k
                and all(isinstance(v, int) and 0 <= v < self.base.n for v in row)
                for row in x
            )
        )

    def inverse(self, x):
        n = self.base.n
        rows = [list(r) for r in x]
        det = linalg.det_int(rows) % n
        if math.gcd(det, n) != 1:
            return None
        det_inv = pow(det, -1, n) if n > 1 else 0
        adj = linalg.adjugate_int(rows)
        return tuple(tuple((det_inv * v) % n for v in row) for row in adj)

    def describe(self):
        return {"matrix": {"base": self.base.describe(), "k": self.k}}

    def element_to_json(self, x):
        return [list(row) for row in x]

    def element_from_json(self, obj):
        if not (isinstance(obj, list) and len(obj) == self.k):
            raise ValueError(f"expected {self.k}x{self.k} matrix, got {obj!r}")
        rows = []
        for row in obj:
            if not (isinstance(row, list) and len(row) == self.k):
                raise ValueError(f"expected {self.k}x{self.k} matrix, got {obj!r}")
            rows.append(tuple(self.base.element_from_json(v) for v in row))
        return tuple(rows)


class ProductRing(Ring):
    """Direct product with componentwise operations; elements are tuples."""

    def __init__(self, factors):
        factors = tuple(factors)
        if not factors:
            raise ValueError("product needs at least one factor")
        super().__init__()
        self.factors = factors
        self.order = math.prod(f.order for f in factors)
        self.zero = tuple(f.zero for f in factors)
        self.one = tuple(f.one for f in factors)
        self.name = " x ".join(f.name for f in factors)

    def add(self, a, b):
        return tuple(f.add(x, y) for f, x, y in zip(self.factors, a, b))

    def neg(self, a):
        return tuple(f.neg(x) for f, x in zip(self.factors, a))

    def mul(self, a, b):
        return tuple(f.mul(x, y) for f, x, y in zip(self.factors, a, b))

    def _enumerate(self):
        return itertools.product(*(f.elements() for f in self.factors))

    def is_element(self, x) -> bool:
        return (
            isinstance(x, tuple)
            and len(x) == len(self.factors)
            and all(f.is_element(v) for f, v in zip(self.factors, x))
        )

    def inverse(self, x):
        parts = [f.inverse(v) for f, v in zip(self.factors, x)]
        return None if any(p is None for p in parts) else tuple(parts)

    def describe(self):
        return {"product": [f.describe() for f in self.factors]}

    def element_to_json(self, x):
        return [f.element_to_json(v) for f, v in zip(self.factors, x)]

    def element_from_json(self, obj):
        if not (isinstance(obj, list) and len(obj) == len(self.factors)):
            raise ValueError(f"expected {len(self.factors)}-tuple, got {obj!r}")
        return tuple(f.element_from_json(v) for f, v in zip(self.factors, obj))


class CornerRing(Ring):
    """e*R*e for an idempotent e; unital with identity e.

    Elements keep their parent encodings, so corner arithmetic is literally
    parent arithmetic restricted to the carrier.
    """

    def __init__(self, parent: Ring, e):
        if not parent.is_idempotent(e):
            raise NotIdempotent(e)
        super().__init__()
        self.parent = parent
        self.e = e
        self.zero = parent.zero
        self.one = e
        self.name = f"corner({parent.name})"

    @property
    def order(self):
        return len(self.elements())

    def elements(self, cap: int | None = None) -> tuple:
        # order is unknown until the carrier is built, so enumerate first;
        # the parent's own cap check bounds the work.
        if self._elements is None:
            with self._lock:
                if self._elements is None:
                    seen = set()
                    out = []
                    for x in self.parent.elements(cap):
                        y = self.project(x)
                        if y not in seen:
                            seen.add(y)
                            out.append(y)
                    self._elements = tuple(out)
        limit = cap if cap is not None else config.enumeration_cap()
        if len(self._elements) > limit:
            raise CapExceeded(len(self._elements), limit)
        return self._elements

    def _enumerate(self):
        return self.elements()

    def project(self, x):
        p = self.parent
        return p.mul(p.mul(self.e, x), self.e)

    def add(self, a, b):
        return self.parent.add(a, b)

    def neg(self, a):
        return self.parent.neg(a)

    def mul(self, a, b):
        return self.parent.mul(a, b)

    def is_element(self, x) -> bool:
        return self.parent.is_element(x) and self.project(x) == x

    def describe(self):
        return {
            "corner": {
                "parent": self.parent.describe(),
                "e": self.parent.element_to_json(self.e),
            }
        }

    def element_to_json(self, x):
        return self.parent.element_to_json(x)

    def element_from_json(self, obj):
        x = self.parent.element_from_json(obj)
        if self.project(x) != x:
            raise ValueError(f"{obj!r} is not fixed by the corner idempotent")
        return x


class IdealData:
    """A two-sided ideal, stored as generators plus the full closure."""

    def __init__(self, ring: Ring, generators, members):
        self.ring = ring
        self.generators = tuple(generators)
        self.members = tuple(members)  # canonical ring order
        self.closure = frozenset(self.members)

    @classmethod
    def from_generators(cls, ring: Ring, generators):
        gens = tuple(generators)
        t = ring.tables()
        idx = [t.index[g] for g in gens]
        closed = _kernels.closure_indices(t, idx, left=True, right=True)
        return cls(ring, gens, tuple(t.elements[i] for i in closed))

    def contains(self, x) -> bool:
        return x in self.closure

    def __len__(self):
        return len(self.members)

    def __repr__(self):
        return f"<IdealData |I|={len(self.members)} of {self.ring.name}>"


class QuotientRing(Ring):
    """R/I with least-representative canonical encodings.

    Construction enumerates the parent once, partitions it into cosets of
    the ideal closure, and maps each coset to its first element in parent
    order.
    """

    def __init__(self, parent: Ring, ideal: IdealData):
        if ideal.ring != parent:
            raise ValueError("ideal belongs to a different ring")
        super().__init__()
        self.parent = parent
        self.ideal = ideal
        rep_of = {}
        reps = []
        for x in parent.elements():
            if x in rep_of:
                continue
            reps.append(x)
            for j in ideal.members:
                rep_of[parent.add(x, j)] = x
        self._reps = tuple(reps)
        self._rep_of = rep_of
        self.order = len(reps)
        self.zero = rep_of[parent.zero]
        self.one = rep_of[parent.one]
        self.name = f"{parent.name}/I{len(ideal.members)}"

    def project(self, x):
        """Canonical representative of x + I (the quotient projection)."""
        return self._rep_of[x]

    def add(self, a, b):
        return self._rep_of[self.parent.add(a, b)]

    def neg(self, a):
        return self._rep_of[self.parent.neg(a)]

    def mul(self, a, b):
        return self._rep_of[self.parent.mul(a, b)]

    def _enumerate(self):
        return self._reps

    def is_element(self, x) -> bool:
        return x in self._rep_of and self._rep_of[x] == x

    def describe(self):
        return {
            "quotient": {
                "parent": self.parent.describe(),
                "ideal_gens": [
                    self.parent.element_to_json(g) for g in self.ideal.generators
                ],
            }
        }

    def element_to_json(self, x):
        return self.parent.element_to_json(x)

    def element_from_json(self, obj):
        return self._rep_of[self.parent.element_from_json(obj)]


def _first_mismatch(lhs, rhs):
    bad = np.argwhere(lhs != rhs)
    return tuple(int(v) for v in bad[0])


def validate_tables(add, mul, one: int) -> int:
    """Check the full ring axioms for explicit tables; returns the zero index.

    O(n^3) by design: every associativity and distributivity triple is
    checked, and the first violation is reported.
    """
    add = np.asarray(add, dtype=np.int32)
    mul = np.asarray(mul, dtype=np.int32)
    n = add.shape[0]
    if add.shape != (n, n) or mul.shape != (n, n):
        raise MalformedTable("shape", (n,))
    for t, law in ((add, "add-range"), (mul, "mul-range")):
        if t.min() < 0 or t.max() >= n:
            raise MalformedTable(law, _first_mismatch((t >= 0) & (t < n), True))
    if not (0 <= one < n):
        raise MalformedTable("one-range", (one,))

    if not np.array_equal(add, add.T):
        a, b = _first_mismatch(add, add.T)
        raise MalformedTable("add-commutativity", (a, b))

    idline = np.arange(n, dtype=np.int32)
    zeros = np.flatnonzero((add == idline).all(axis=1))
    if len(zeros) == 0:
        raise MalformedTable("add-identity", ())
    zero = int(zeros[0])

    for a in range(n):
        if zero not in add[a]:
            raise MalformedTable("add-inverse", (a,))

    for a in range(n):
        lhs = add[add[a], :]           # (a+b)+c
        rhs = add[a][add]              # a+(b+c)
        if not np.array_equal(lhs, rhs):
            b, c = _first_mismatch(lhs, rhs)
            raise MalformedTable("add-associativity", (a, b, c))

    if not (np.array_equal(mul[one], idline) and np.array_equal(mul[:, one], idline)):
        raise MalformedTable("mul-identity", (one,))

    for a in range(n):
        lhs = mul[mul[a], :]           # (a*b)*c
        rhs = mul[a][mul]              # a*(b*c)
        if not np.array_equal(lhs, rhs):
            b, c = _first_mismatch(lhs, rhs)
            raise MalformedTable("mul-associativity", (a, b, c))

    for a in range(n):
        lhs = mul[a][add]              # a*(b+c)
        rhs = add[np.ix_(mul[a], mul[a])]
        if not np.array_equal(lhs, rhs):
            b, c = _first_mismatch(lhs, rhs)
            raise MalformedTable("left-distributivity", (a, b, c))
        col = mul[:, a]
        lhs = col[add]                 # (b+c)*a
        rhs = add[np.ix_(col, col)]
        if not np.array_equal(lhs, rhs):
            b, c = _first_mismatch(lhs, rhs)
            raise MalformedTable("right-distributivity", (a, b, c))

    return zero


class TableRing(Ring):
    """A ring given by explicit operation tables, validated at construction."""

    def __init__(self, add_table, mul_table, one: int, labels=None, name=None):
        super().__init__()
        zero = validate_tables(add_table, mul_table, one)
        self._add = tuple(tuple(int(v) for v in row) for row in add_table)
        self._mul = tuple(tuple(int(v) for v in row) for row in mul_table)
        self.order = len(self._add)
        self.zero = zero
        self.one = one
        self.labels = tuple(labels) if labels is not None else None
        self.name = name or f"table({self.order})"

    def add(self, a, b):
        return self._add[a][b]

    def neg(self, a):
        return self._add[a].index(self.zero)

    def mul(self, a, b):
        return self._mul[a][b]

    def _enumerate(self):
        return range(self.order)

    def is_element(self, x) -> bool:
        return isinstance(x, int) and 0 <= x < self.order

    def element_repr(self, x) -> str:
        if self.labels is not None:
            return self.labels[x]
        return repr(x)

    def describe(self):
        desc = {
            "table": {
                "size": self.order,
                "add": [list(r) for r in self._add],
                "mul": [list(r) for r in self._mul],
                "one": self.one,
            }
        }
        if self.labels is not None:
            desc["table"]["labels"] = list(self.labels)
        if self.name:
            desc["table"]["name"] = self.name
        return desc

    def element_to_json(self, x):
        return x

    def element_from_json(self, obj):
        if not (isinstance(obj, int) and 0 <= obj < self.order):
            raise ValueError(f"expected index 0..{self.order - 1}, got {obj!r}")
        return obj


def triangular_ring(p: int, k: int = 2) -> TableRing:
    """Upper triangular k-by-k matrices over Z/p, materialized as a TableRing."""
    base = ZMod(p)
    positions = [(i, j) for i in range(k) for j in range(i, k)]
    mats = []
    for vals in itertools.product(range(p), repeat=len(positions)):
        m = [[0] * k for _ in range(k)]
        for (i, j), v in zip(positions, vals):
            m[i][j] = v
        mats.append(tuple(tuple(row) for row in m))
    index = {m: i for i, m in enumerate(mats)}
    full = MatrixRing(base, k)
    add = [[index[full.add(a, b)] for b in mats] for a in mats]
    mul = [[index[full.mul(a, b)] for b in mats] for a in mats]
    labels = [str([list(r) for r in m]) for m in mats]
    return TableRing(add, mul, index[full.one], labels=labels, name=f"T{k}(Z/{p})")
