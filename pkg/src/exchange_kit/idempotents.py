"""Idempotent calculus: strong isomorphism, refinement, transport, orthogonalization.

The central relation is *left strong isomorphism* of idempotents,

    e ~ e'   iff   e'e = e'  and  ee' = e,

whose mirror (right strong isomorphism) is written e ~~ e' and means
f f' = f' and f' f = f.  The five classical characterizations are computed
clause by clause, and the distinguished unit

    u = 1 + e' - e,   u^{-1} = 1 - e' + e

is constructed with its six transport identities re-verified on every call.
All families are ordered; "almost orthogonal" always refers to products
e_i * e_j with i < j in family order.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from . import _kernels
from .errors import (
    InvariantViolated,
    NotIdempotent,
    NotStronglyIso,
    NotUnit,
    PairNotInRadical,
    PreconditionFailed,
)
from .rings import CornerRing, Ring


@dataclass(frozen=True)
class IdempotentFamily:
    """An ordered tuple of idempotents in a fixed ring."""

    ring: Ring
    members: tuple

    def __post_init__(self):
        for x in self.members:
            if not self.ring.is_idempotent(x):
                raise NotIdempotent(x)

    def __len__(self):
        return len(self.members)

    def __iter__(self):
        return iter(self.members)

    def __getitem__(self, i):
        return self.members[i]

    def sum(self):
        return self.ring.sum_many(self.members)

    def is_orthogonal(self) -> bool:
        R = self.ring
        m = self.members
        for i in range(len(m)):
            for j in range(len(m)):
                if i != j and not R.eq(R.mul(m[i], m[j]), R.zero):
                    return False
        return True

    def pairwise_in(self, ideal_members) -> bool:
        """True when e_i * e_j lies in the given set for every i < j."""
        R = self.ring
        m = self.members
        for i in range(len(m)):
            for j in range(i + 1, len(m)):
                if R.mul(m[i], m[j]) not in ideal_members:
                    return False
        return True


def family(ring: Ring, members) -> IdempotentFamily:
    return IdempotentFamily(ring, tuple(members))


def is_left_strongly_iso(R: Ring, e, e_prime) -> bool:
    """e ~ e': e'e = e' and ee' = e (both inputs must be idempotent)."""
    for x in (e, e_prime):
        if not R.is_idempotent(x):
            raise NotIdempotent(x)
    return R.eq(R.mul(e_prime, e), e_prime) and R.eq(R.mul(e, e_prime), e)


def is_right_strongly_iso(R: Ring, f, f_prime) -> bool:
    """f ~~ f': f f' = f' and f' f = f (the mirror relation)."""
    for x in (f, f_prime):
        if not R.is_idempotent(x):
            raise NotIdempotent(x)
    return R.eq(R.mul(f, f_prime), f_prime) and R.eq(R.mul(f_prime, f), f)


@dataclass(frozen=True)
class StrongIsoWitness:
    """The distinguished unit carrying e to e' while fixing 1 - e."""

    ring: Ring
    e: object
    e_prime: object
    u: object
    u_inv: object

    def identities(self) -> dict:
        """The six transport identities; all must be True for a valid witness."""
        R = self.ring
        e, ep, u, ui = self.e, self.e_prime, self.u, self.u_inv
        one = R.one
        ce = R.sub(one, e)
        cep = R.sub(one, ep)
        return {
            "u*e == e'": R.eq(R.mul(u, e), ep),
            "u*(1-e) == 1-e": R.eq(R.mul(u, ce), ce),
            "u*(1-e') == 1-e'": R.eq(R.mul(u, cep), cep),
            "e*u == e": R.eq(R.mul(e, u), e),
            "e'*u == e'": R.eq(R.mul(ep, u), ep),
            "(1-e)*u_inv == 1-e'": R.eq(R.mul(ce, ui), cep),
        }


def unit_from_strong_iso(R: Ring, e, e_prime) -> StrongIsoWitness:
    """Build u = 1 + e' - e for a strongly isomorphic pair.

    >>> from exchange_kit.rings import ZMod
    >>> w = unit_from_strong_iso(ZMod(6), 3, 3)
    >>> w.u, w.u_inv
    (1, 1)
    """
    if not is_left_strongly_iso(R, e, e_prime):
        raise NotStronglyIso(e, e_prime)
    u = R.add(R.sub(R.one, e), e_prime)
    u_inv = R.add(R.sub(R.one, e_prime), e)
    if not (R.eq(R.mul(u, u_inv), R.one) and R.eq(R.mul(u_inv, u), R.one)):
        raise InvariantViolated("unit_from_strong_iso", "u * u_inv != 1")
    witness = StrongIsoWitness(R, e, e_prime, u, u_inv)
    for label, ok in witness.identities().items():
        if not ok:
            raise InvariantViolated("unit_from_strong_iso", label)
    return witness


@dataclass(frozen=True)
class Lemma1Report:
    """Clause-by-clause evaluation of the strong-isomorphism characterizations."""

    strongly_iso: bool          # e'e = e' and ee' = e
    same_left_ideal: bool       # Re = Re'
    perturbation: bool          # e' = e + (1-e) r e for some r
    unit_transport: bool        # some unit u: ue = e' and u(1-e) = 1-e
    complements_right_iso: bool  # (1-e) ~~ (1-e')
    r_witness: object = None
    u_witness: object = None
    u_inv_witness: object = None

    def all_agree(self) -> bool:
        vals = {
            self.strongly_iso,
            self.same_left_ideal,
            self.perturbation,
            self.unit_transport,
            self.complements_right_iso,
        }
        return len(vals) == 1


def lemma1_equivalences(R: Ring, e, e_prime) -> Lemma1Report:
    """Evaluate all five characterizations independently (no shortcuts)."""
    iso = is_left_strongly_iso(R, e, e_prime)  # validates idempotency

    t = R.tables()
    ie, iep = t.index[e], t.index[e_prime]
    same_ideal = _kernels.left_multiple_indices(t, ie) == _kernels.left_multiple_indices(t, iep)

    r_witness = None
    ce = R.sub(R.one, e)
    for r in R.elements():
        if R.eq(R.add(e, R.mul(R.mul(ce, r), e)), e_prime):
            r_witness = r
            break

    u_witness = u_inv_witness = None
    if iso:
        u_witness = R.add(R.sub(R.one, e), e_prime)
        u_inv_witness = R.add(R.sub(R.one, e_prime), e)
    else:
        inv = _kernels.inverse_table(t)
        for i, u in enumerate(t.elements):
            if inv[i] < 0:
                continue
            if R.eq(R.mul(u, e), e_prime) and R.eq(R.mul(u, ce), ce):
                u_witness, u_inv_witness = u, t.elements[inv[i]]
                break

    cep = R.sub(R.one, e_prime)
    return Lemma1Report(
        strongly_iso=iso,
        same_left_ideal=same_ideal,
        perturbation=r_witness is not None,
        unit_transport=u_witness is not None,
        complements_right_iso=is_right_strongly_iso(R, ce, cep),
        r_witness=r_witness,
        u_witness=u_witness,
        u_inv_witness=u_inv_witness,
    )


@dataclass(frozen=True)
class RefineResult:
    """Orthogonal refinement of a three-term partition of 1.

    e1, e2, e3 are pairwise orthogonal idempotents with e1 + e2 + e3 = 1,
    e_i = s_i * x_i, and x1 ~ e1.  The corner data used to build them is
    kept for audit: f = 1 - x1, and inside the corner fRf the pieces
    f2 = c2 * (f x2 f) and f3 = c3 * (f x3 f) satisfy f2 + f3 = f.
    """

    e1: object
    e2: object
    e3: object
    s1: object
    s2: object
    s3: object
    f: object
    f2: object
    f3: object
    c2: object
    c3: object

    def family(self, ring: Ring) -> IdempotentFamily:
        return IdempotentFamily(ring, (self.e1, self.e2, self.e3))


def refine_three(R: Ring, x1, x2, x3, corner_decompose=None) -> RefineResult:
    """Split 1 = x1 + x2 + x3 (x1 idempotent) into an orthogonal triple.

    The corner fRf with f = 1 - x1 receives the partition
    f x2 f + f x3 f = f; a suitable decomposition there produces f2, f3,
    and the three outputs are

        e2 = f2 c2 f x2,   e3 = f3 c3 f x3,   e1 = 1 - e2 - e3,

    with e_i in R x_i and x1 ~ e1.  All postconditions are re-verified.
    """
    if not R.eq(R.sum_many((x1, x2, x3)), R.one):
        raise PreconditionFailed("x1 + x2 + x3 != 1")
    if not R.is_idempotent(x1):
        raise NotIdempotent(x1)

    f = R.sub(R.one, x1)
    corner = CornerRing(R, f)
    a = corner.project(x2)  # f x2 f
    b = corner.project(x3)  # f x3 f
    if not corner.eq(corner.add(a, b), corner.one):
        raise InvariantViolated("refine_three", "f x2 f + f x3 f != f")

    if corner_decompose is None:
        from .exchange import suitable_decompose

        dec = suitable_decompose(corner, a, b)
        f2, f3, c2, c3 = dec.e, dec.f, dec.r, dec.s
    else:
        f2, f3, c2, c3 = corner_decompose(corner, a, b)

    # memberships: e2 = (f2 c2 f) x2 and e3 = (f3 c3 f) x3
    s2 = R.mul(R.mul(f2, c2), f)
    s3 = R.mul(R.mul(f3, c3), f)
    e2 = R.mul(s2, x2)
    e3 = R.mul(s3, x3)
    e1 = R.sub(R.sub(R.one, e2), e3)

    fam = IdempotentFamily(R, (e1, e2, e3))
    if not fam.is_orthogonal():
        raise InvariantViolated("refine_three", "outputs not orthogonal")
    if not R.eq(fam.sum(), R.one):
        raise InvariantViolated("refine_three", "outputs do not sum to 1")
    if not R.eq(R.mul(e1, x1), e1):
        raise InvariantViolated("refine_three", "e1 not a left multiple of x1")
    if not (R.eq(R.mul(x1, e1), x1) and R.eq(R.mul(e1, x1), e1)):
        raise InvariantViolated("refine_three", "x1 not strongly isomorphic to e1")
    return RefineResult(
        e1=e1, e2=e2, e3=e3,
        s1=e1, s2=s2, s3=s3,
        f=f, f2=f2, f3=f3, c2=c2, c3=c3,
    )


def transport_family(R: Ring, e, e_prime, fam: IdempotentFamily,
                     f_extra=None) -> IdempotentFamily:
    """Carry an orthogonal decomposition of e across e ~ e'.

    Given orthogonal idempotents g_i with sum e, the images e' g_i are
    orthogonal idempotents with g_i ~ e' g_i; when e' = u e for the
    distinguished unit, e' g_i = u g_i.  An extra idempotent orthogonal
    to e stays orthogonal to every g_i.
    """
    if not is_left_strongly_iso(R, e, e_prime):
        raise NotStronglyIso(e, e_prime)
    if not fam.is_orthogonal():
        raise PreconditionFailed("family not orthogonal")
    if not R.eq(fam.sum(), e):
        raise PreconditionFailed("family does not sum to e")
    if f_extra is not None:
        if not R.is_idempotent(f_extra):
            raise NotIdempotent(f_extra)
        if not (R.eq(R.mul(f_extra, e), R.zero) and R.eq(R.mul(e, f_extra), R.zero)):
            raise PreconditionFailed("f_extra not orthogonal to e")

    out = tuple(R.mul(e_prime, g) for g in fam)
    new_fam = IdempotentFamily(R, out)  # validates idempotency
    if not new_fam.is_orthogonal():
        raise InvariantViolated("transport_family", "images not orthogonal")
    if not R.eq(new_fam.sum(), e_prime):
        raise InvariantViolated("transport_family", "images do not sum to e'")
    for g, h in zip(fam, out):
        if not is_left_strongly_iso(R, g, h):
            raise InvariantViolated("transport_family", "g_i not strongly iso to e' g_i")
    if f_extra is not None:
        for g in fam:
            if not (R.eq(R.mul(f_extra, g), R.zero) and R.eq(R.mul(g, f_extra), R.zero)):
                raise InvariantViolated("transport_family", "f_extra meets the family")
    return new_fam


def orthogonalize(R: Ring, fam: IdempotentFamily, u=None, radical=None) -> IdempotentFamily:
    """Turn an almost-orthogonal family with unit sum into a true partition of 1.

    Preconditions: e_i e_j lies in the radical for i < j (exactly zero when
    no radical is supplied), and u = sum(fam) is a unit.  The output is
    {u^{-1} e_i}, re-verified to be orthogonal idempotents summing to 1.
    The output never depends on the radical argument; it only widens the
    precondition.
    """
    allowed = radical.closure if radical is not None else {R.zero}
    m = fam.members
    for i in range(len(m)):
        for j in range(i + 1, len(m)):
            if R.mul(m[i], m[j]) not in allowed:
                raise PairNotInRadical(i, j)
    total = fam.sum()
    if u is None:
        u = total
    elif not R.eq(u, total):
        raise PreconditionFailed("u != sum of family")
    u_inv = R.inverse(u)
    if u_inv is None:
        raise NotUnit(u)

    out = tuple(R.mul(u_inv, e) for e in m)
    new_fam = IdempotentFamily(R, out)
    if not new_fam.is_orthogonal():
        raise InvariantViolated("orthogonalize", "outputs not orthogonal")
    if not R.eq(new_fam.sum(), R.one):
        raise InvariantViolated("orthogonalize", "outputs do not sum to 1")
    return new_fam


def power_kill(R: Ring, fam: IdempotentFamily, r, n: int) -> bool:
    """From e^n r = 0 (e = sum of an almost-orthogonal family) conclude e r = 0.

    Preconditions: e_i e_j = 0 for i < j (exact) and (sum fam)^n r = 0.
    Verifies e_i r = 0 for every i and e r = 0; returns True.
    """
    m = fam.members
    for i in range(len(m)):
        for j in range(i + 1, len(m)):
            if not R.eq(R.mul(m[i], m[j]), R.zero):
                raise PreconditionFailed(f"e_{i} e_{j} != 0")
    if n < 1:
        raise PreconditionFailed("n must be at least 1")
    e = fam.sum()
    if not R.eq(R.mul(R.power(e, n), r), R.zero):
        raise PreconditionFailed("e^n r != 0")
    for i, ei in enumerate(m):
        if not R.eq(R.mul(ei, r), R.zero):
            raise InvariantViolated("power_kill", f"e_{i} r != 0")
    if not R.eq(R.mul(e, r), R.zero):
        raise InvariantViolated("power_kill", "e r != 0")
    return True
