"""Suitable decompositions, the staged exchange chain, and its repair subroutines.

The chain turns an equation x_1 + ... + x_n = 1 into orthogonal idempotents
e_i = s_i * x_i summing to 1.  Stage 1 is a plain suitable decomposition;
stage a refines (sum of previous e's, r*x_a, r*y_a) with the three-term
splitting lemma, then transports the previous family across the
distinguished unit u_a = 1 + h_1 - (sum of previous e's).  Every stage
re-verifies the two structural invariants

    (1) {e_{1,j}, ..., e_{j,j}, f_j} orthogonal idempotents summing to 1,
    (2) v_j e_{i,i} = e_{i,j} and v_j f_j = f_j,

plus the membership witnesses e_{i,j} = s_i x_i and f_j = r_j y_j.

`regularize`, `pi_regular_reduce` and `transfer_idempotent` are the repair
subroutines used past the finite stages; here they run on searched finite
instances with every witness identity machine-checked.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from . import _kernels
from .errors import (
    InvariantViolated,
    NoIdempotentGenerator,
    NotIdempotent,
    NotPiRegular,
    NotRegular,
    NotSuitable,
    PreconditionFailed,
    RegularizationFailed,
)
from .idempotents import (
    IdempotentFamily,
    is_right_strongly_iso,
    orthogonalize,
    power_kill,
    refine_three,
    transport_family,
    unit_from_strong_iso,
)
from .linalg import PrimeField, projection_split
from .radical import RadicalData, jacobson_radical, quotient_lift_family
from .rings import MatrixRing, Ring, ZMod, is_prime


@dataclass(frozen=True)
class Decomposition:
    """Orthogonal idempotents e = r*x and f = s*y with e + f = 1."""

    ring: Ring
    x: object
    y: object
    e: object
    f: object
    r: object
    s: object

    def check(self):
        R = self.ring
        checks = (
            ("e idempotent", R.is_idempotent(self.e)),
            ("f idempotent", R.is_idempotent(self.f)),
            ("e*f == 0", R.eq(R.mul(self.e, self.f), R.zero)),
            ("f*e == 0", R.eq(R.mul(self.f, self.e), R.zero)),
            ("e+f == 1", R.eq(R.add(self.e, self.f), R.one)),
            ("e == r*x", R.eq(R.mul(self.r, self.x), self.e)),
            ("f == s*y", R.eq(R.mul(self.s, self.y), self.f)),
        )
        for label, ok in checks:
            if not ok:
                raise InvariantViolated("suitable_decompose", label)


def _mat_entries(R: MatrixRing, x):
    return [list(row) for row in x]


def _kernel_split_decompose(R: MatrixRing, x, y) -> Decomposition:
    """Projection pair for matrix rings over a prime field (see projection_split)."""
    F = PrimeField(R.base.n)
    split = projection_split(F, _mat_entries(R, x))
    if split is None:
        raise InvariantViolated("suitable_decompose", "projection construction failed")
    em, rm, sm = split

    def pack(mat):
        return tuple(tuple(v % R.base.n for v in row) for row in mat)

    e = pack(em)
    dec = Decomposition(ring=R, x=x, y=y, e=e, f=R.sub(R.one, e),
                        r=pack(rm), s=pack(sm))
    dec.check()
    return dec


def _search_decompose(R: Ring, x, y) -> Decomposition:
    t = R.tables()
    hit = _kernels.suitable_search(t, t.index[x])
    if hit is None:
        raise NotSuitable(x)
    ri, si = hit
    r, s = t.elements[ri], t.elements[si]
    e = R.mul(r, x)
    dec = Decomposition(ring=R, x=x, y=y, e=e, f=R.sub(R.one, e), r=r, s=s)
    dec.check()
    return dec


def suitable_decompose(R: Ring, x, y, backend: str = "auto") -> Decomposition:
    """Split x + y = 1 into orthogonal idempotents e in Rx, f in Ry.

    backend: "search" scans R exhaustively (ground truth, first hit in
    canonical order); "kernel" uses the linear-algebra construction (matrix
    rings over a prime field only); "auto" picks "kernel" when available.

    >>> from exchange_kit.rings import ZMod
    >>> dec = suitable_decompose(ZMod(6), 3, 4)
    >>> (dec.e, dec.f)
    (3, 4)
    """
    if not R.eq(R.add(x, y), R.one):
        raise PreconditionFailed("x + y != 1")
    kernel_ok = isinstance(R, MatrixRing) and isinstance(R.base, ZMod) and is_prime(R.base.n)
    if backend == "auto":
        backend = "kernel" if kernel_ok else "search"
    if backend == "kernel":
        if not kernel_ok:
            raise ValueError("kernel backend requires a matrix ring over a prime field")
        return _kernel_split_decompose(R, x, y)
    if backend == "search":
        return _search_decompose(R, x, y)
    raise ValueError(f"unknown backend {backend!r}")


@dataclass(frozen=True)
class ExchangeCertificate:
    """Orthogonal idempotents e_i = s_i * x_i summing to 1."""

    ring: Ring
    x: tuple
    e: tuple
    memberships: tuple


def first_certificate_violation(cert: ExchangeCertificate):
    """The first broken certificate clause, or None when the certificate is valid."""
    R = cert.ring
    if not (len(cert.x) == len(cert.e) == len(cert.memberships)):
        return "length mismatch between x, e, and memberships"
    for i, ei in enumerate(cert.e):
        if not R.is_idempotent(ei):
            return f"e_{i} not idempotent"
    for i, (ei, si, xi) in enumerate(zip(cert.e, cert.memberships, cert.x)):
        if not R.eq(R.mul(si, xi), ei):
            return f"e_{i} != s_{i} * x_{i}"
    for i in range(len(cert.e)):
        for j in range(len(cert.e)):
            if i != j and not R.eq(R.mul(cert.e[i], cert.e[j]), R.zero):
                return f"e_{i} * e_{j} != 0"
    if not R.eq(R.sum_many(cert.e), R.one):
        return "sum of e_i != 1"
    return None


def validate_certificate(cert: ExchangeCertificate) -> bool:
    """Re-check every certificate invariant from scratch."""
    return first_certificate_violation(cert) is None


@dataclass(frozen=True)
class StageState:
    """Chain state after stage j (1-based)."""

    ring: Ring
    stage: int
    e: tuple            # e_{i,j} for i = 1..j
    f: object           # f_j
    v: object
    v_inv: object
    x: tuple            # full input family
    y: object           # tail sum x_{j+1} + ... + x_n
    memberships: tuple  # s_i with e_{i,j} = s_i * x_i
    f_witness: object   # r_j with f_j = r_j * y_j

    def verify(self, diag):
        """Assert invariants (1), (2), the memberships, and that v is a unit.

        `diag` supplies e_{i,i} from the earlier stages (diag[i-1] = e_{i,i}).
        """
        R = self.ring
        j = self.stage
        fam = IdempotentFamily(R, (*self.e, self.f))
        if not fam.is_orthogonal():
            raise InvariantViolated(f"stage {j}", "(1) family not orthogonal")
        if not R.eq(fam.sum(), R.one):
            raise InvariantViolated(f"stage {j}", "(1) family does not sum to 1")
        if not (R.eq(R.mul(self.v, self.v_inv), R.one)
                and R.eq(R.mul(self.v_inv, self.v), R.one)):
            raise InvariantViolated(f"stage {j}", "v_j not a unit")
        for i in range(j):
            if not R.eq(R.mul(self.v, diag[i]), self.e[i]):
                raise InvariantViolated(f"stage {j}", f"(2) v_j e_{{{i+1},{i+1}}} != e_{{{i+1},{j}}}")
        if not R.eq(R.mul(self.v, self.f), self.f):
            raise InvariantViolated(f"stage {j}", "(2) v_j f_j != f_j")
        for i in range(j):
            if not R.eq(R.mul(self.memberships[i], self.x[i]), self.e[i]):
                raise InvariantViolated(f"stage {j}", f"membership e_{{{i+1},{j}}}")
        if not R.eq(R.mul(self.f_witness, self.y), self.f):
            raise InvariantViolated(f"stage {j}", "membership f_j")


@dataclass(frozen=True)
class ChainResult:
    certificate: ExchangeCertificate
    stages: tuple


def exchange_chain(R: Ring, x) -> ChainResult:
    """Run the staged construction on a family summing to 1.

    >>> from exchange_kit.rings import ZMod
    >>> exchange_chain(ZMod(6), (3, 4)).certificate.e
    (3, 4)
    """
    xs = tuple(x)
    n = len(xs)
    if n == 0:
        raise PreconditionFailed("empty family")
    if not R.eq(R.sum_many(xs), R.one):
        raise PreconditionFailed("family does not sum to 1")

    def tail(j):  # x_{j+1} + ... + x_n
        return R.sum_many(xs[j:]) if j < n else R.zero

    y1 = tail(1)
    dec = suitable_decompose(R, xs[0], y1, backend="search")
    state = StageState(
        ring=R, stage=1, e=(dec.e,), f=dec.f, v=R.one, v_inv=R.one,
        x=xs, y=y1, memberships=(dec.r,), f_witness=dec.s,
    )
    diag = [dec.e]
    state.verify(diag)
    stages = [state]

    for a in range(2, n + 1):
        prev = stages[-1]
        y_a = tail(a)
        big_e = R.sum_many(prev.e)
        if not R.eq(R.add(big_e, prev.f), R.one):
            raise InvariantViolated(f"stage {a}", "carry-in does not sum to 1")
        x2 = R.mul(prev.f_witness, xs[a - 1])
        x3 = R.mul(prev.f_witness, y_a)
        ref = refine_three(R, big_e, x2, x3)

        wit = unit_from_strong_iso(R, big_e, ref.e1)
        u, u_inv = wit.u, wit.u_inv
        if not R.eq(R.mul(u, prev.f), prev.f):
            raise InvariantViolated(f"stage {a}", "u_a does not fix f_{a-1}")

        moved = transport_family(R, big_e, ref.e1, IdempotentFamily(R, prev.e))
        new_e = tuple(R.mul(u, ei) for ei in prev.e)
        if tuple(moved) != new_e:
            raise InvariantViolated(f"stage {a}", "transport disagrees with u-multiplication")

        if not is_right_strongly_iso(R, prev.f, R.add(ref.e2, ref.e3)):
            raise InvariantViolated(f"stage {a}", "e_aa + f_a not right strongly iso to f_{a-1}")

        new_s = tuple(R.mul(u, si) for si in prev.memberships)
        m_a = R.mul(ref.s2, prev.f_witness)        # e_{a,a} = (s2 r_{a-1}) x_a
        f_wit = R.mul(ref.s3, prev.f_witness)      # f_a = (s3 r_{a-1}) y_a
        state = StageState(
            ring=R,
            stage=a,
            e=(*new_e, ref.e2),
            f=ref.e3,
            v=R.mul(u, prev.v),
            v_inv=R.mul(prev.v_inv, u_inv),
            x=xs,
            y=y_a,
            memberships=(*new_s, m_a),
            f_witness=f_wit,
        )
        diag.append(ref.e2)
        state.verify(diag)
        stages.append(state)

    final = stages[-1]
    if not R.eq(final.f, R.zero):
        raise InvariantViolated(f"stage {n}", "f_n != 0")
    for i in range(n):
        for j in range(i + 1, n):
            if not R.eq(R.mul(diag[i], diag[j]), R.zero):
                raise InvariantViolated("final", f"e_{{{i+1},{i+1}}} e_{{{j+1},{j+1}}} != 0")

    cert = ExchangeCertificate(ring=R, x=xs, e=final.e, memberships=final.memberships)
    violation = first_certificate_violation(cert)
    if violation is not None:
        raise InvariantViolated("certificate", violation)
    return ChainResult(certificate=cert, stages=tuple(stages))


@dataclass(frozen=True)
class QuotientChainResult:
    certificate: ExchangeCertificate
    quotient_chain: ChainResult
    lifted: tuple
    u: object


def exchange_chain_via_quotient(R: Ring, x, rad: RadicalData | None = None) -> QuotientChainResult:
    """Chain in R/J, lift the idempotents, then orthogonalize with u = sum of lifts.

    >>> from exchange_kit.rings import ZMod
    >>> exchange_chain_via_quotient(ZMod(12), (9, 4)).certificate.e
    (9, 4)
    """
    xs = tuple(x)
    if rad is None:
        rad = jacobson_radical(R)
    if not R.eq(R.sum_many(xs), R.one):
        raise PreconditionFailed("family does not sum to 1")
    Q = rad.quotient
    q_result = exchange_chain(Q, tuple(rad.project(xi) for xi in xs))
    lifted = quotient_lift_family(rad, q_result.certificate.e, xs)
    ortho = orthogonalize(R, lifted.family, u=lifted.u, radical=rad)
    memberships = tuple(R.mul(lifted.u_inv, w) for w in lifted.witnesses)
    cert = ExchangeCertificate(ring=R, x=xs, e=tuple(ortho), memberships=memberships)
    violation = first_certificate_violation(cert)
    if violation is not None:
        raise InvariantViolated("certificate", violation)
    return QuotientChainResult(
        certificate=cert,
        quotient_chain=q_result,
        lifted=tuple(lifted.family),
        u=lifted.u,
    )


@dataclass(frozen=True)
class RegularizationWitness:
    """phi' = phi + p is a unit; p kills phi; psi is the inner inverse used."""

    phi: object
    psi: object
    p: object
    phi_prime: object
    phi_prime_inv: object
    mode: str                  # "exact" | "mod_radical"
    p_tilde: object = None     # mod_radical only
    phi_tilde: object = None
    phi_tilde_inv: object = None


def _exact_regularize_attempt(R: Ring, phi, psi, fam):
    if not R.eq(R.mul(R.mul(phi, psi), phi), phi):
        return None
    p = R.sub(R.one, R.mul(psi, phi))
    if not R.is_idempotent(p):
        return None
    if not R.eq(R.mul(phi, p), R.zero):
        return None
    phi_prime = R.add(phi, p)
    inv = R.inverse(phi_prime)
    if inv is None:
        return None
    if fam is not None:
        # phi p = 0 with phi = sum(fam): the power lemma (n = 1) gives e_i p = 0
        power_kill(R, fam, p, 1)
    return RegularizationWitness(
        phi=phi, psi=psi, p=p, phi_prime=phi_prime, phi_prime_inv=inv, mode="exact",
    )


def _mod_radical_regularize_attempt(R: Ring, phi, psi, rad: RadicalData):
    from .radical import lift_idempotent

    defect = R.sub(phi, R.mul(R.mul(phi, psi), phi))
    if defect not in rad.closure:
        return None
    q = R.sub(R.one, R.mul(psi, phi))
    try:
        p_tilde = lift_idempotent(rad, q, rad.project(q)).e
    except Exception:
        return None
    if R.sub(p_tilde, q) not in rad.closure:
        return None
    phi_tilde = R.add(phi, p_tilde)
    tilde_inv = R.inverse(phi_tilde)
    if tilde_inv is None:
        return None
    p = R.mul(tilde_inv, p_tilde)
    phi_prime = R.add(phi, p)
    inv = R.inverse(phi_prime)
    if inv is None:
        return None
    return RegularizationWitness(
        phi=phi, psi=psi, p=p, phi_prime=phi_prime, phi_prime_inv=inv,
        mode="mod_radical", p_tilde=p_tilde, phi_tilde=phi_tilde, phi_tilde_inv=tilde_inv,
    )


def regularize(R: Ring, phi, rad: RadicalData | None = None,
               fam: IdempotentFamily | None = None) -> RegularizationWitness:
    """Find psi and the correction idempotent p making phi + p a unit.

    Exact mode (rad is None) scans psi with phi*psi*phi = phi; mod_radical
    mode (rad given) scans psi with phi - phi*psi*phi in J, lifts
    1 - psi*phi to an idempotent, and verifies *both* units in R itself.
    The first psi (canonical order) passing every witness identity wins.
    NotRegular means no psi satisfies the inner-inverse condition at all;
    RegularizationFailed means inner inverses exist but none yields a unit.
    """
    if fam is not None:
        if rad is not None:
            raise ValueError("family assertions are an exact-mode feature")
        m = fam.members
        for i in range(len(m)):
            for j in range(i + 1, len(m)):
                if not R.eq(R.mul(m[i], m[j]), R.zero):
                    raise PreconditionFailed(f"e_{i} e_{j} != 0")
        if not R.eq(fam.sum(), phi):
            raise PreconditionFailed("family does not sum to phi")

    saw_inner_inverse = False
    for psi in R.elements():
        if rad is None:
            w = _exact_regularize_attempt(R, phi, psi, fam)
            if w is None and R.eq(R.mul(R.mul(phi, psi), phi), phi):
                saw_inner_inverse = True
        else:
            w = _mod_radical_regularize_attempt(R, phi, psi, rad)
            if w is None:
                defect = R.sub(phi, R.mul(R.mul(phi, psi), phi))
                if defect in rad.closure:
                    saw_inner_inverse = True
        if w is not None:
            return w
    if saw_inner_inverse:
        raise RegularizationFailed(phi)
    raise NotRegular(phi)


@dataclass(frozen=True)
class PiRegularWitness:
    """psi_prime = psi * phi^(n-1) is an inner inverse of phi itself."""

    phi: object
    n: int
    psi: object
    psi_prime: object


def pi_regular_reduce(R: Ring, phi, fam: IdempotentFamily,
                      n: int | None = None, psi=None) -> PiRegularWitness:
    """Reduce regularity of phi^n to regularity of phi = sum of an almost-orthogonal family.

    phi^n (1 - psi phi^n) = 0, so the power lemma kills the error term at
    every family member and phi (1 - psi phi^n) = 0 follows; therefore
    psi' = psi phi^(n-1) satisfies phi psi' phi = phi.
    """
    m = fam.members
    for i in range(len(m)):
        for j in range(i + 1, len(m)):
            if not R.eq(R.mul(m[i], m[j]), R.zero):
                raise PreconditionFailed(f"e_{i} e_{j} != 0")
    if not R.eq(fam.sum(), phi):
        raise PreconditionFailed("family does not sum to phi")

    t = R.tables()
    if n is None:
        hit = _kernels.power_inner_inverse(t, t.index[phi])
        if hit is None:
            raise NotPiRegular(phi)
        n, psi_i = hit
        if psi is None:
            psi = t.elements[psi_i]
    elif psi is None:
        phi_n = R.power(phi, n)
        found = _kernels.inner_inverse(t, t.index[phi_n])
        if found is None:
            raise NotPiRegular(phi)
        psi = t.elements[found]
    phi_n = R.power(phi, n)
    if not R.eq(R.mul(R.mul(phi_n, psi), phi_n), phi_n):
        raise PreconditionFailed("psi is not an inner inverse of phi^n")

    residue = R.sub(R.one, R.mul(psi, phi_n))
    power_kill(R, fam, residue, n)             # phi^n residue = 0 => phi residue = 0
    psi_prime = R.mul(psi, R.power(phi, n - 1)) if n > 1 else psi
    if not R.eq(R.mul(R.mul(phi, psi_prime), phi), phi):
        raise InvariantViolated("pi_regular_reduce", "phi psi' phi != phi")
    return PiRegularWitness(phi=phi, n=n, psi=psi, psi_prime=psi_prime)


@dataclass(frozen=True)
class TransferWitness:
    """f'' = r' y' is right strongly isomorphic to f', with r' = f' z."""

    y_prime: object
    f_prime: object
    g: object
    z: object
    r_prime: object
    f_double_prime: object


def transfer_idempotent(R: Ring, y_prime, f_prime, r_history) -> TransferWitness:
    """Rebuild an idempotent f'' in R y' right strongly isomorphic to f'.

    r_history lists (r_i, y_i) with f_i = r_i y_i idempotent, f_i f' = f',
    and r_i (y' f') = f' — the membership data accumulated by earlier
    stages.  g is the first idempotent generating y' f' R (f' itself is
    preferred when it qualifies); z solves y' f' z = g and is normalised
    with z g = z; then r' = f' z and f'' = r' y'.
    """
    if not R.is_idempotent(f_prime):
        raise NotIdempotent(f_prime)
    t_elt = R.mul(y_prime, f_prime)
    history = tuple(r_history)
    for k, (ri, yi) in enumerate(history):
        fi = R.mul(ri, yi)
        if not R.is_idempotent(fi):
            raise PreconditionFailed(f"history {k}: r_i y_i not idempotent")
        if not R.eq(R.mul(fi, f_prime), f_prime):
            raise PreconditionFailed(f"history {k}: f_i f' != f'")
        if not R.eq(R.mul(ri, t_elt), f_prime):
            raise PreconditionFailed(f"history {k}: r_i y' f' != f'")

    t = R.tables()
    target = _kernels.right_multiple_indices(t, t.index[t_elt])
    g = None
    if R.is_idempotent(f_prime) and _kernels.right_multiple_indices(
            t, t.index[f_prime]) == target:
        g = f_prime
    else:
        for gi in _kernels.idempotent_indices(t):
            if _kernels.right_multiple_indices(t, gi) == target:
                g = t.elements[gi]
                break
    if g is None:
        raise NoIdempotentGenerator("y' f' R")
    if not R.eq(R.mul(g, t_elt), t_elt):
        raise InvariantViolated("transfer_idempotent", "g y' f' != y' f'")

    z0 = next((c for c in R.elements() if R.eq(R.mul(t_elt, c), g)), None)
    if z0 is None:
        raise InvariantViolated("transfer_idempotent", "no solution of y' f' z = g")
    z = R.mul(z0, g)
    r_prime = R.mul(f_prime, z)
    f2 = R.mul(r_prime, y_prime)

    checks = (
        ("y' f' z == g", R.eq(R.mul(t_elt, z), g)),
        ("z g == z", R.eq(R.mul(z, g), z)),
        ("f'' idempotent", R.is_idempotent(f2)),
        ("f' f'' == f''", R.eq(R.mul(f_prime, f2), f2)),
        ("f'' f' == f'", R.eq(R.mul(f2, f_prime), f_prime)),
    )
    for label, ok in checks:
        if not ok:
            if not history:
                raise PreconditionFailed(
                    f"empty history cannot justify {label!r}; supply the stage data")
            raise InvariantViolated("transfer_idempotent", label)
    if not is_right_strongly_iso(R, f_prime, f2):
        raise InvariantViolated("transfer_idempotent", "f' not right strongly iso to f''")
    return TransferWitness(y_prime=y_prime, f_prime=f_prime, g=g, z=z,
                           r_prime=r_prime, f_double_prime=f2)


@dataclass(frozen=True)
class SuitabilityReport:
    order: int
    suitable: bool
    mode: str          # "exhaustive" | "sampled"
    checked: int
    counterexample: object = None


def verify_exchange_ring(R: Ring, sample_budget: int = 2000, seed: int = 0) -> SuitabilityReport:
    """Confirm suitable_decompose succeeds for every x (sampling above order 256)."""
    t = R.tables()
    if t.n <= 256:
        cx = _kernels.first_unsuitable(t)
        return SuitabilityReport(
            order=t.n, suitable=cx is None, mode="exhaustive", checked=t.n,
            counterexample=None if cx is None else t.elements[cx],
        )
    rng = random.Random(seed)
    for k in range(sample_budget):
        i = rng.randrange(t.n)
        if _kernels.suitable_search(t, i) is None:
            return SuitabilityReport(order=t.n, suitable=False, mode="sampled",
                                     checked=k + 1, counterexample=t.elements[i])
    return SuitabilityReport(order=t.n, suitable=True, mode="sampled",
                             checked=sample_budget)
