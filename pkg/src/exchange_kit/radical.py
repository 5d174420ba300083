"""Jacobson radical, quotient passage, idempotent lifting, classification.

For a finite ring the radical is computed honestly from the definition

    J = { r : 1 - s*r is invertible for every s },

the quotient R/J is materialized with canonical coset representatives, and
idempotents are lifted along the projection either by exhaustive search
(the oracle) or by the cubic iterate e -> 3e^2 - 2e^3 (the fast path, valid
because J is nilpotent).  `classify` computes the regularity flags by
exhaustive search and asserts the implication lattice

    regular => pi_regular => semi_pi_regular => suitable,
    regular => semiregular,

raising InvariantViolated if any chain link fails.

>>> from exchange_kit.rings import ZMod
>>> jacobson_radical(ZMod(8)).members
(0, 2, 4, 6)
"""

from __future__ import annotations

from dataclasses import dataclass, field

from . import _kernels
from .errors import InvariantViolated, NoLift, NotIdempotent, PreconditionFailed
from .idempotents import IdempotentFamily
from .rings import IdealData, QuotientRing, Ring


@dataclass(frozen=True)
class RadicalData:
    """J(R) together with the quotient ring and projection."""

    ring: Ring
    ideal: IdealData
    quotient: QuotientRing
    nilpotency_index: int

    @property
    def members(self):
        return self.ideal.members

    @property
    def closure(self):
        return self.ideal.closure

    def project(self, x):
        return self.quotient.project(x)

    def is_zero(self) -> bool:
        return len(self.ideal.members) == 1


def _nilpotency_index(R: Ring, members) -> int:
    """Smallest k with J^k = 0 (exists: finite rings have nilpotent radical)."""
    zero_only = {R.zero}
    current = set(members)
    k = 1
    while current != zero_only:
        current = {R.mul(a, b) for a in current for b in members}
        k += 1
        if k > len(members) + 1:
            raise InvariantViolated("jacobson_radical", "radical not nilpotent")
    return k


def jacobson_radical(R: Ring) -> RadicalData:
    """Compute J(R), the quotient R/J with canonical representatives, and J's nilpotency index.

    >>> from exchange_kit.rings import ZMod
    >>> rad = jacobson_radical(ZMod(12))
    >>> rad.members, rad.quotient.order
    ((0, 6), 6)
    """
    t = R.tables()
    idx = _kernels.radical_indices(t)
    members = tuple(t.elements[i] for i in idx)
    ideal = IdealData.from_generators(R, members)
    if set(ideal.members) != set(members):
        raise InvariantViolated("jacobson_radical", "radical not an ideal")
    quotient = QuotientRing(R, ideal)
    return RadicalData(
        ring=R,
        ideal=ideal,
        quotient=quotient,
        nilpotency_index=_nilpotency_index(R, members),
    )


@dataclass(frozen=True)
class LiftResult:
    """An idempotent e = witness * x in R lying over a quotient idempotent."""

    e: object
    witness: object


def _check_eps(rad: RadicalData, x, eps):
    Q = rad.quotient
    if not Q.is_idempotent(eps):
        raise NotIdempotent(eps)
    x_bar = rad.project(x)
    for rho_bar in Q.elements():
        if Q.eq(Q.mul(rho_bar, x_bar), eps):
            return rho_bar
    raise PreconditionFailed("eps not a left multiple of the projection of x")


def _verify_lift(rad: RadicalData, x, eps, e, witness):
    R = rad.ring
    if not R.is_idempotent(e):
        raise InvariantViolated("lift_idempotent", "lift not idempotent")
    if not R.eq(R.mul(witness, x), e):
        raise InvariantViolated("lift_idempotent", "membership witness broken")
    if rad.project(e) != eps:
        raise InvariantViolated("lift_idempotent", "lift projects to the wrong class")


def lift_idempotent(rad: RadicalData, x, eps, method: str = "search") -> LiftResult:
    """Lift a quotient idempotent eps in (R/J)*x_bar to an idempotent e in R*x.

    method="search" scans R in canonical order (the oracle); method="newton"
    starts from a congruent element of R*x and squashes the error with
    e -> 3e^2 - 2e^3, which stays inside R*x and converges since J is
    nilpotent.  Both verify all postconditions before returning.

    >>> from exchange_kit.rings import ZMod
    >>> rad = jacobson_radical(ZMod(12))
    >>> lift_idempotent(rad, 3, rad.project(3)).e
    9
    """
    R = rad.ring
    rho_bar = _check_eps(rad, x, eps)
    if method == "search":
        for e in R.elements():
            if not R.is_idempotent(e) or rad.project(e) != eps:
                continue
            for s in R.elements():
                if R.eq(R.mul(s, x), e):
                    _verify_lift(rad, x, eps, e, s)
                    return LiftResult(e=e, witness=s)
        raise NoLift(eps)
    if method != "newton":
        raise ValueError(f"unknown method {method!r}")

    # any representative of rho_bar gives a = rho*x with a_bar = eps
    rho = next(r for r in R.elements() if rad.project(r) == rho_bar)
    e, w = R.mul(rho, x), rho
    for _ in range(rad.nilpotency_index + 2):
        if R.is_idempotent(e):
            _verify_lift(rad, x, eps, e, w)
            return LiftResult(e=e, witness=w)
        # 3e^2 - 2e^3 = (3e - 2e^2) * e keeps the left factor on the witness
        t = R.sub(R.add(R.add(e, e), e), R.add(R.mul(e, e), R.mul(e, e)))
        e, w = R.mul(t, e), R.mul(t, w)
    raise NoLift(eps)


@dataclass(frozen=True)
class QuotientLiftResult:
    """Lifted family e_i in R*x_i with u = sum(e_i) a unit congruent to 1 mod J."""

    family: IdempotentFamily
    u: object
    u_inv: object
    witnesses: tuple


def quotient_lift_family(rad: RadicalData, quotient_family, x) -> QuotientLiftResult:
    """Lift orthogonal quotient idempotents eps_i in (R/J)*x_bar_i summing to 1.

    Returns the lifted family, membership witnesses, and the unit u = sum(e_i)
    (invertible because u is congruent to 1 modulo the nilpotent radical) —
    exactly the data `orthogonalize` consumes.
    """
    Q = rad.quotient
    eps = tuple(quotient_family)
    if len(eps) != len(tuple(x)):
        raise PreconditionFailed("family length mismatch")
    qfam = IdempotentFamily(Q, eps)
    if not qfam.is_orthogonal():
        raise PreconditionFailed("quotient family not orthogonal")
    if not Q.eq(qfam.sum(), Q.one):
        raise PreconditionFailed("quotient family does not sum to 1")

    lifts = [lift_idempotent(rad, xi, ei) for xi, ei in zip(x, eps)]
    members = tuple(l.e for l in lifts)
    R = rad.ring
    u = R.sum_many(members)
    if rad.project(u) != Q.one:
        raise InvariantViolated("quotient_lift_family", "sum not congruent to 1 mod J")
    u_inv = R.inverse(u)
    if u_inv is None:
        raise InvariantViolated("quotient_lift_family", "sum of lifts not a unit")
    return QuotientLiftResult(
        family=IdempotentFamily(R, members),
        u=u,
        u_inv=u_inv,
        witnesses=tuple(l.witness for l in lifts),
    )


@dataclass(frozen=True)
class FlagReport:
    """One classification predicate with its witness or counterexample."""

    value: bool
    counterexample: object = None
    detail: str = ""

    def __bool__(self):
        return self.value


@dataclass(frozen=True)
class ClassificationReport:
    ring_order: int
    radical_size: int
    nilpotency_index: int
    flags: dict = field(default_factory=dict)

    def __getattr__(self, name):
        try:
            return self.flags[name]
        except KeyError:
            raise AttributeError(name) from None

    FLAG_NAMES = (
        "suitable", "regular", "pi_regular", "strongly_pi_regular",
        "semiregular", "semi_pi_regular", "dedekind_finite",
        "cohopfian_rr", "c2_rr",
    )


def _lifting_counterexample(rad: RadicalData):
    """A quotient idempotent with no idempotent preimage, or None."""
    R, Q = rad.ring, rad.quotient
    lifted = {rad.project(e) for e in R.idempotents()}
    for eps in Q.idempotents():
        if eps not in lifted:
            return eps
    return None


def _c2_counterexample(R: Ring):
    """An (e, a) with x -> a*x embedding eR into R onto a non-summand, or None.

    Right-module maps eR -> R_R are exactly left multiplications by some a
    with a = a*e; the map is injective iff |a*eR| = |eR|, and its image is
    a*R.  The image is a summand iff some idempotent g has gR = aR.
    """
    t = R.tables()
    mul = t.mul_rows()
    idem = _kernels.idempotent_indices(t)
    right_sets = {g: _kernels.right_multiple_indices(t, g) for g in idem}
    for e in idem:
        eR = right_sets[e]
        size = len(eR)
        col_e = [mul[a][e] for a in range(t.n)]
        for a in range(t.n):
            if col_e[a] != a:  # need a = a*e
                continue
            row = mul[a]
            image = {row[v] for v in eR}
            if len(image) != size:
                continue
            img = tuple(sorted(image))
            if not any(right_sets[g] == img for g in idem):
                return (t.elements[e], t.elements[a])
    return None


def classify(R: Ring, rad: RadicalData | None = None) -> ClassificationReport:
    """Compute all classification flags exhaustively and assert the implication lattice.

    >>> from exchange_kit.rings import ZMod
    >>> classify(ZMod(6)).regular.value
    True
    >>> classify(ZMod(4)).regular.counterexample
    2
    """
    t = R.tables()
    if rad is None:
        rad = jacobson_radical(R)
    Q = rad.quotient
    qt = Q.tables()

    def flag(counterexample, detail=""):
        return FlagReport(value=counterexample is None,
                          counterexample=counterexample, detail=detail)

    def elem(i):
        return None if i is None else t.elements[i]

    flags = {}
    flags["suitable"] = flag(elem(_kernels.first_unsuitable(t)),
                             "x with no suitable decomposition of (x, 1-x)")
    flags["regular"] = flag(elem(_kernels.first_nonregular(t)),
                            "x with no y such that x*y*x = x")
    flags["pi_regular"] = flag(elem(_kernels.first_non_pi_regular(t)),
                               "x with no regular power x^n, n <= |R|")
    flags["strongly_pi_regular"] = flag(
        elem(_kernels.first_non_strongly_pi_regular(t)),
        "x whose chain xR >= x^2 R >= ... never stabilizes with x^n in x^(n+1)R")

    lift_cx = _lifting_counterexample(rad)
    q_regular = _kernels.first_nonregular(qt)
    q_pi_regular = _kernels.first_non_pi_regular(qt)
    if lift_cx is not None:
        flags["semiregular"] = flag(lift_cx, "quotient idempotent with no idempotent lift")
        flags["semi_pi_regular"] = flag(lift_cx, "quotient idempotent with no idempotent lift")
    else:
        flags["semiregular"] = flag(
            None if q_regular is None else qt.elements[q_regular],
            "non-regular element of R/J")
        flags["semi_pi_regular"] = flag(
            None if q_pi_regular is None else qt.elements[q_pi_regular],
            "non-pi-regular element of R/J")

    dk = _kernels.first_non_dedekind(t)
    flags["dedekind_finite"] = flag(
        None if dk is None else (t.elements[dk[0]], t.elements[dk[1]]),
        "(a, b) with a*b = 1 but b*a != 1")
    flags["cohopfian_rr"] = flag(elem(_kernels.first_cohopf_violation(t)),
                                 "left non-zero-divisor that is not a unit")
    flags["c2_rr"] = flag(_c2_counterexample(R),
                          "(e, a): x -> a*x embeds eR onto a non-summand")

    report = ClassificationReport(
        ring_order=t.n,
        radical_size=len(rad.members),
        nilpotency_index=rad.nilpotency_index,
        flags=flags,
    )
    for premise, conclusion in (
        ("regular", "pi_regular"),
        ("pi_regular", "semi_pi_regular"),
        ("semi_pi_regular", "suitable"),
        ("regular", "semiregular"),
    ):
        if flags[premise].value and not flags[conclusion].value:
            raise InvariantViolated("classify", f"{premise} without {conclusion}")
    return report
