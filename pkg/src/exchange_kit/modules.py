"""Finite abelian groups as Z-modules: endomorphism rings, C2, and the transfer check.

A module here is a direct sum of cyclic prime-power groups Z/p^k in canonical
sorted order.  Three things are computed exactly:

* endomorphism_ring(M) — End(M) materialized as a finite ring with fast
  vectorized operation tables.  Hom(Z/p^a, Z/p^b) is cyclic of order
  p^min(a,b) (generated by multiplication by p^(b - min(a,b))), so an
  endomorphism is a matrix of such entries and |End(M)| is the product of
  the pairwise gcds of the factor moduli.
* module_has_C2(M) — the C2 condition: every submodule isomorphic to a
  direct summand is itself a direct summand.  Submodules are enumerated via
  the subgroup lattice; isomorphism types are read off the p^j-multiple
  filtration; summand types are exactly the sub-multisets of the factor
  type (Krull-Schmidt at desk scale).
* lemma8_check(M) — the endomorphism-ring transfer: if End(M) has C2 as a
  right module over itself then M has C2.  The cohopfian companion clause
  is computed but vacuous here: finite modules and finite rings are always
  cohopfian, and the genuinely infinite counterexamples are out of reach of
  this desk-scale corpus (noted explicitly in the report).

>>> module_from_spec("2,1 2,2").order
8
>>> endomorphism_ring(module_from_spec("2,1 2,2")).order
32
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import config
from .errors import CapExceeded, InvariantViolated, PreconditionFailed
from .radical import ClassificationReport, classify
from .rings import Ring, is_prime

_LATTICE_BUDGET = 2_000_000   # member insertions during subgroup BFS
_FIDELITY_EXHAUSTIVE = 64     # all-pairs composition check up to this order
_FIDELITY_SAMPLES = 256       # sampled pairs above it (seeded, deterministic)


@dataclass(frozen=True)
class FiniteAbelianModule:
    """Direct sum of Z/p^k factors, canonically sorted by (p, k)."""

    factors: tuple  # ((p, k), ...)

    def __post_init__(self):
        if not self.factors:
            raise PreconditionFailed("module needs at least one cyclic factor")
        for p, k in self.factors:
            if not is_prime(p):
                raise PreconditionFailed(f"{p} is not prime")
            if k < 1:
                raise PreconditionFailed(f"exponent {k} must be positive")
        if tuple(sorted(self.factors)) != tuple(self.factors):
            raise PreconditionFailed("factors must be sorted by (prime, exponent)")

    @property
    def moduli(self) -> tuple:
        return tuple(p ** k for p, k in self.factors)

    @property
    def order(self) -> int:
        return math.prod(self.moduli)

    @property
    def rank(self) -> int:
        return len(self.factors)

    def primes(self) -> tuple:
        return tuple(sorted({p for p, _ in self.factors}))

    def type_partition(self, p: int) -> tuple:
        """Exponent multiset of the p-primary part, descending."""
        return tuple(sorted((k for q, k in self.factors if q == p), reverse=True))

    def elements(self):
        if self.order > config.enumeration_cap():
            raise CapExceeded(self.order, config.enumeration_cap())
        return tuple(itertools.product(*(range(m) for m in self.moduli)))

    @property
    def zero(self) -> tuple:
        return (0,) * self.rank

    def add(self, x, y):
        return tuple((a + b) % m for a, b, m in zip(x, y, self.moduli))

    def neg(self, x):
        return tuple((-a) % m for a, m in zip(x, self.moduli))

    def scale(self, c: int, x):
        return tuple((c * a) % m for a, m in zip(x, self.moduli))

    def describe(self) -> str:
        return " + ".join(f"Z/{p}^{k}" if k > 1 else f"Z/{p}"
                          for p, k in self.factors)


def module_from_spec(spec) -> FiniteAbelianModule:
    """Parse "p,k p,k ..." (or an iterable of (p, k) pairs) into a module."""
    if isinstance(spec, str):
        pairs = []
        for chunk in spec.replace(";", " ").split():
            p_s, k_s = chunk.split(",")
            pairs.append((int(p_s), int(k_s)))
    else:
        pairs = [(int(p), int(k)) for p, k in spec]
    return FiniteAbelianModule(tuple(sorted(pairs)))


# ---------------------------------------------------------------------------
# endomorphism ring


def endo_ring_order(M: FiniteAbelianModule) -> int:
    """|End(M)| = product over factor pairs of gcd(d_i, d_j); cheap formula."""
    d = M.moduli
    total = 1
    for di in d:
        for dj in d:
            total *= math.gcd(di, dj)
    return total


class EndoRing(Ring):
    """End(M) with elements encoded as integers in mixed radix over hom slots.

    Slot (i, j) parametrizes Hom(factor j -> factor i): entries are the
    multiples t * (d_i / g_ij) mod d_i for t < g_ij = gcd(d_i, d_j).
    Operation tables are built vectorized once at construction; addition is
    slotwise mod g_ij and composition is matrix product with rowwise moduli.
    """

    def __init__(self, module: FiniteAbelianModule, cap: int | None = None):
        super().__init__()
        limit = cap if cap is not None else config.enumeration_cap()
        n = endo_ring_order(module)
        if n > limit:
            raise CapExceeded(n, limit)
        self.module = module
        self.order = n
        r = module.rank
        d = module.moduli
        self._r = r
        self._radix = np.array(
            [[math.gcd(d[i], d[j]) for j in range(r)] for i in range(r)],
            dtype=np.int64)
        self._step = np.array(
            [[d[i] // math.gcd(d[i], d[j]) for j in range(r)] for i in range(r)],
            dtype=np.int64)
        flat_radix = self._radix.reshape(-1)
        place = np.ones(r * r, dtype=np.int64)
        for s in range(r * r - 2, -1, -1):
            place[s] = place[s + 1] * flat_radix[s + 1]
        self._place = place

        codes = np.arange(n, dtype=np.int64)
        digits = (codes[:, None] // place[None, :]) % flat_radix[None, :]
        self._digits = digits                      # (n, r*r) slot parameters
        mats = digits.reshape(n, r, r) * self._step[None, :, :]
        self._mats = mats                          # (n, r, r) matrix entries

        self.zero = 0
        self.one = self._encode_matrix(np.eye(r, dtype=np.int64))
        self.name = f"End({module.describe()})"
        self._build_tables_vectorized()

    def _encode_matrix(self, mat) -> int:
        mat = np.asarray(mat, dtype=np.int64) % np.array(
            self.module.moduli, dtype=np.int64)[:, None]
        if np.any(mat % self._step):
            raise PreconditionFailed("matrix entries outside the hom slots")
        digits = (mat // self._step).reshape(-1)
        if np.any(digits >= self._radix.reshape(-1)):
            raise PreconditionFailed("matrix entries outside the hom slots")
        return int(digits @ self._place)

    def matrix_of(self, x: int):
        """The endomorphism matrix (rows indexed by target factor)."""
        return tuple(tuple(int(v) for v in row) for row in self._mats[x])

    def _build_tables_vectorized(self):
        from ._kernels import RingTables

        n, r = self.order, self._r
        d_col = np.array(self.module.moduli, dtype=np.int64)[:, None]
        flat_radix = self._radix.reshape(-1)[None, :]
        place = self._place

        add = np.empty((n, n), dtype=np.int32)
        mul = np.empty((n, n), dtype=np.int32)
        chunk = max(1, min(n, (1 << 22) // max(n * r * r, 1)))
        for lo in range(0, n, chunk):
            hi = min(n, lo + chunk)
            dsum = (self._digits[lo:hi, None, :] + self._digits[None, :, :]) % flat_radix
            add[lo:hi] = (dsum @ place).astype(np.int32)
            prod = np.matmul(self._mats[lo:hi, None, :, :],
                             self._mats[None, :, :, :]) % d_col
            pdig = (prod // self._step).reshape(hi - lo, n, r * r)
            mul[lo:hi] = (pdig @ place).astype(np.int32)
        negd = (-self._digits) % flat_radix
        neg = (negd @ place).astype(np.int32)

        elems = tuple(range(n))
        self._tables = RingTables(
            elements=elems,
            index={i: i for i in elems},
            add=add, mul=mul, neg=neg,
            zero=self.zero, one=self.one,
        )
        self._elements = elems

    def add(self, a, b):
        return int(self._tables.add[a][b])

    def mul(self, a, b):
        return int(self._tables.mul[a][b])

    def neg(self, a):
        return int(self._tables.neg[a])

    def _enumerate(self):
        return range(self.order)

    def is_element(self, x) -> bool:
        return isinstance(x, int) and 0 <= x < self.order

    def element_repr(self, x) -> str:
        return f"endo{self.matrix_of(x)}"

    def element_to_json(self, x):
        return int(x)

    def element_from_json(self, data):
        x = int(data)
        if not self.is_element(x):
            raise PreconditionFailed(f"endomorphism code {x} out of range")
        return x

    def describe(self):
        return {"endo": {"factors": [list(f) for f in self.module.factors]}}

    def apply(self, x: int, m):
        """Act on a module element: (phi m)_i = sum_j phi_ij m_j mod d_i."""
        mat = self._mats[x]
        d = self.module.moduli
        return tuple(int(sum(int(mat[i][j]) * m[j] for j in range(self._r)) % d[i])
                     for i in range(self._r))


def endomorphism_ring(M: FiniteAbelianModule, cap: int | None = None) -> EndoRing:
    """End(M) as a finite ring.

    Composition fidelity (table mul == pointwise composition of actions) is
    re-verified against apply(): all pairs up to order 64, a seeded sample of
    pairs above that — the vectorized table build is checked by independent
    per-element arithmetic either way.
    """
    E = EndoRing(M, cap=cap)
    elems = M.elements()
    if E.order <= _FIDELITY_EXHAUSTIVE:
        pairs = [(a, b) for a in range(E.order) for b in range(E.order)]
    else:
        rng = random.Random(0xF1DE ^ E.order)
        pairs = [(rng.randrange(E.order), rng.randrange(E.order))
                 for _ in range(_FIDELITY_SAMPLES)]
    probe = elems if len(elems) <= 64 else elems[:64]
    for a, b in pairs:
        c = E.mul(a, b)
        for m in probe:
            if E.apply(c, m) != E.apply(a, E.apply(b, m)):
                raise InvariantViolated(
                    "endomorphism_ring",
                    f"composition mismatch at ({a}, {b}) on {m}")
    for m in probe:
        if E.apply(E.one, m) != m or E.apply(E.zero, m) != M.zero:
            raise InvariantViolated("endomorphism_ring", "identity action broken")
    return E


# ---------------------------------------------------------------------------
# subgroup lattice and C2


@dataclass(frozen=True)
class Subgroup:
    """A submodule as a sorted tuple of element indices plus a membership mask."""

    indices: tuple
    mask: int

    @property
    def order(self) -> int:
        return len(self.indices)


def subgroup_lattice(M: FiniteAbelianModule, budget: int = _LATTICE_BUDGET) -> tuple:
    """Every subgroup of M, by BFS over prime-order cyclic extensions.

    Each subgroup K covering H satisfies K = H + <g> for some g with
    p g in H, so closing {0} under such extensions reaches the whole
    lattice.  Work is capped by total member insertions.
    """
    elems = M.elements()
    index = {e: i for i, e in enumerate(elems)}
    n = len(elems)
    add_row = [[index[M.add(elems[i], elems[j])] for j in range(n)] for i in range(n)]
    prime_maps = {p: [index[M.scale(p, e)] for e in elems] for p in M.primes()}
    zero_i = index[M.zero]

    start = Subgroup(indices=(zero_i,), mask=1 << zero_i)
    seen = {start.mask: start}
    frontier = [start]
    work = 0
    while frontier:
        H = frontier.pop()
        for g in range(n):
            if H.mask >> g & 1:
                continue
            for p, pmap in prime_maps.items():
                if not (H.mask >> pmap[g] & 1):
                    continue
                members = set(H.indices)
                shift = g
                for _ in range(p - 1):
                    members.update(add_row[h][shift] for h in H.indices)
                    shift = add_row[shift][g]
                work += len(members)
                if work > budget:
                    raise CapExceeded(work, budget)
                mask = 0
                for m in members:
                    mask |= 1 << m
                if mask not in seen:
                    sg = Subgroup(indices=tuple(sorted(members)), mask=mask)
                    seen[mask] = sg
                    frontier.append(sg)
                break  # one prime suffices; others rediscover the same cover
    return tuple(sorted(seen.values(), key=lambda s: (s.order, s.indices)))


def subgroup_type(M: FiniteAbelianModule, sub: Subgroup) -> dict:
    """Isomorphism type as {p: partition}, read off the p^j-multiple filtration."""
    elems = M.elements()
    out = {}
    for p in M.primes():
        layer = {elems[i] for i in sub.indices}
        # keep only the p-primary component: scale by the coprime cofactor
        cof = 1
        for q, k in M.factors:
            if q != p:
                cof *= q ** k
        layer = {M.scale(cof, e) for e in layer}
        sizes = [len(layer)]
        while sizes[-1] > 1:
            layer = {M.scale(p, e) for e in layer}
            sizes.append(len(layer))
        partition = []
        for j in range(1, len(sizes)):
            ratio = sizes[j - 1] // sizes[j]
            count = 0
            while ratio > 1:
                ratio //= p
                count += 1
            partition.append(count)  # number of cyclic factors with exponent >= j
        exponents = []
        for j, cnt in enumerate(partition):
            nxt = partition[j + 1] if j + 1 < len(partition) else 0
            exponents.extend([j + 1] * (cnt - nxt))
        out[p] = tuple(sorted(exponents, reverse=True))
    return {p: part for p, part in out.items() if part}


def _is_submultiset(small: tuple, big: tuple) -> bool:
    pool = list(big)
    for v in small:
        if v in pool:
            pool.remove(v)
        else:
            return False
    return True


def _iso_to_summand(M: FiniteAbelianModule, typ: dict) -> bool:
    """N is isomorphic to a direct summand iff its type is a factor sub-multiset."""
    for p, part in typ.items():
        if not _is_submultiset(part, M.type_partition(p)):
            return False
    return True


def _is_summand(M: FiniteAbelianModule, sub: Subgroup, lattice: tuple,
                zero_mask: int) -> bool:
    target = M.order // sub.order
    for other in lattice:
        if other.order == target and (sub.mask & other.mask) == zero_mask:
            return True
    return False


@dataclass(frozen=True)
class C2Report:
    value: bool
    witness: Optional[tuple]     # member element tuples of the violating submodule
    witness_type: Optional[dict]
    detail: str

    def __bool__(self) -> bool:
        return self.value

    def to_payload(self):
        return {
            "c2": self.value,
            "witness": [list(e) for e in self.witness] if self.witness else None,
            "witness_type": ({f"{p}": list(t) for p, t in self.witness_type.items()}
                             if self.witness_type else None),
            "detail": self.detail,
        }


def module_has_C2(M: FiniteAbelianModule, force_enumeration: bool = False) -> C2Report:
    """Does every submodule isomorphic to a direct summand split off?

    Semisimple modules (all exponents 1) short-circuit to true — every
    submodule is a summand — unless force_enumeration asks for the lattice
    anyway (used by the cross-validation tests).

    >>> module_has_C2(module_from_spec("2,2")).value
    True
    >>> rep = module_has_C2(module_from_spec("2,1 2,2"))
    >>> rep.value, rep.witness
    (False, ((0, 0), (0, 2)))
    """
    if M.order > config.enumeration_cap():
        raise CapExceeded(M.order, config.enumeration_cap())
    if not force_enumeration and all(k == 1 for _, k in M.factors):
        return C2Report(True, None, None,
                        "semisimple: every submodule is a direct summand")
    elems = M.elements()
    index = {e: i for i, e in enumerate(elems)}
    zero_mask = 1 << index[M.zero]
    lattice = subgroup_lattice(M)
    for sub in lattice:
        typ = subgroup_type(M, sub)
        if not _iso_to_summand(M, typ):
            continue
        if not _is_summand(M, sub, lattice, zero_mask):
            witness = tuple(elems[i] for i in sub.indices)
            return C2Report(False, witness, typ,
                            f"submodule of order {sub.order} is isomorphic to a "
                            "direct summand but has no complement")
    return C2Report(True, None, None,
                    f"checked {len(lattice)} submodules exhaustively")


# ---------------------------------------------------------------------------
# the transfer check


@dataclass(frozen=True)
class Lemma8Report:
    module: FiniteAbelianModule
    endo_order: int
    ring_c2: bool
    ring_cohopfian: bool
    module_c2: C2Report
    module_cohopfian: bool
    implication_holds: bool
    cohopfian_note: str
    classification: ClassificationReport

    def to_payload(self):
        return {
            "module": self.module.describe(),
            "factors": [list(f) for f in self.module.factors],
            "endo_order": self.endo_order,
            "ring_c2": self.ring_c2,
            "ring_cohopfian": self.ring_cohopfian,
            "module_c2": self.module_c2.to_payload(),
            "module_cohopfian": self.module_cohopfian,
            "implication_holds": self.implication_holds,
            "cohopfian_note": self.cohopfian_note,
        }


def _module_cohopfian(E: EndoRing) -> bool:
    """Every injective endomorphism is surjective — forced by finiteness."""
    M = E.module
    elems = np.array(M.elements(), dtype=np.int64)          # (m, r)
    d = np.array(M.moduli, dtype=np.int64)
    place = np.ones(M.rank, dtype=np.int64)
    for s in range(M.rank - 2, -1, -1):
        place[s] = place[s + 1] * d[s + 1]
    images = np.einsum("xij,mj->xmi", E._mats, elems) % d   # (n, m, r)
    codes = images @ place                                  # (n, m)
    zero_code = 0
    kernel_sizes = (codes == zero_code).sum(axis=1)
    image_sizes = np.array([len(np.unique(row)) for row in codes])
    injective = kernel_sizes == 1
    surjective = image_sizes == len(elems)
    return bool(np.all(~injective | surjective))


def lemma8_check(M: FiniteAbelianModule, cap: int | None = None) -> Lemma8Report:
    """Transfer from End(M) to M: ring C2 (as right module) implies module C2.

    The cohopfian clause is the same transfer for injective endomorphisms;
    at this scale both sides are vacuously true (finiteness makes every
    injective self-map surjective), which the report states rather than
    hides.  A ring-side C2 with a failing module side is an implementation
    bug and raises InvariantViolated.
    """
    limit = cap if cap is not None else config.enumeration_cap()
    n = endo_ring_order(M)
    if n > limit:
        raise CapExceeded(n, limit)
    E = endomorphism_ring(M, cap=limit)
    report = classify(E)
    module_c2 = module_has_C2(M)
    module_coh = _module_cohopfian(E)
    ring_c2 = bool(report.c2_rr)
    ring_coh = bool(report.cohopfian_rr)
    implication = (not ring_c2) or module_c2.value
    coh_implication = (not ring_coh) or module_coh
    if not implication:
        raise InvariantViolated(
            "lemma8_check", f"End has C2 but {M.describe()} does not")
    if not coh_implication:
        raise InvariantViolated(
            "lemma8_check", f"End cohopfian but {M.describe()} is not")
    return Lemma8Report(
        module=M,
        endo_order=E.order,
        ring_c2=ring_c2,
        ring_cohopfian=ring_coh,
        module_c2=module_c2,
        module_cohopfian=module_coh,
        implication_holds=implication and coh_implication,
        cohopfian_note=("vacuous at finite scale: every injective endomorphism "
                        "of a finite module is an automorphism"),
        classification=report,
    )


def modules_up_to(order_cap: int):
    """All canonical modules with 1 < |M| <= order_cap, sorted by (order, factors)."""

    def partitions(total):
        # multisets of positive integers summing to total, descending
        def rec(rest, mx):
            if rest == 0:
                yield ()
                return
            for first in range(min(rest, mx), 0, -1):
                for tail in rec(rest - first, first):
                    yield (first,) + tail
        return rec(total, total)

    primes = [p for p in range(2, order_cap + 1) if is_prime(p)]
    out = []

    def rec(idx, remaining, factors):
        if factors:
            out.append(FiniteAbelianModule(tuple(sorted(factors))))
        for i in range(idx, len(primes)):
            p = primes[i]
            if p > remaining:
                break
            budget = 0
            cap = remaining
            while cap >= p:
                budget += 1
                cap //= p
            for total in range(1, budget + 1):
                for part in partitions(total):
                    rec(i + 1, remaining // p ** total,
                        factors + [(p, k) for k in part])

    rec(0, order_cap, [])
    return tuple(sorted(out, key=lambda m: (m.order, m.factors)))
