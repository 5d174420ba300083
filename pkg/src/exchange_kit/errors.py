"""Exception hierarchy.

Everything raised on purpose derives from ExchangeKitError so callers (and the
CLI) can separate domain failures from genuine bugs.  Errors that certify a
negative mathematical finding carry the witness that certifies it.
"""

from __future__ import annotations


class ExchangeKitError(Exception):
    """Base class for all deliberate failures."""


class CapExceeded(ExchangeKitError):
    """Enumeration would exceed the configured cap.

    Carries the offending cardinality when it is computable, otherwise the
    name of the constructor variant whose order overflowed.
    """

    def __init__(self, what, cap):
        self.what = what
        self.cap = cap
        super().__init__(f"enumeration of {what} exceeds cap {cap}")


class MalformedTable(ExchangeKitError):
    """An explicit operation table violates a ring axiom.

    ``law`` names the broken axiom, ``triple`` is a witness (indices).
    """

    def __init__(self, law, triple):
        self.law = law
        self.triple = triple
        super().__init__(f"table violates {law} at {triple}")


class PreconditionFailed(ExchangeKitError):
    """An operation's stated precondition does not hold for the inputs."""


class NotIdempotent(PreconditionFailed):
    def __init__(self, element):
        self.element = element
        super().__init__(f"{element!r} is not idempotent")


class NotStronglyIso(PreconditionFailed):
    def __init__(self, e, e_prime):
        self.pair = (e, e_prime)
        super().__init__(f"{e!r} and {e_prime!r} are not left strongly isomorphic")


class NotUnit(PreconditionFailed):
    def __init__(self, element):
        self.element = element
        super().__init__(f"{element!r} is not a unit")


class PairNotInRadical(PreconditionFailed):
    """A family pair product e_i * e_j (i < j) escapes the allowed ideal."""

    def __init__(self, i, j):
        self.indices = (i, j)
        super().__init__(f"product of members {i} and {j} lies outside the radical")


class NotSuitable(ExchangeKitError):
    """Exhaustive search found an element with no idempotent splitting.

    For a finite input this certifies the ring is not suitable (the search
    space is complete), so the violating element is carried as a witness.
    """

    def __init__(self, x):
        self.x = x
        super().__init__(f"no suitable decomposition for {x!r}")


class NotRegular(ExchangeKitError):
    def __init__(self, phi):
        self.phi = phi
        super().__init__(f"{phi!r} has no inner inverse")


class NotPiRegular(ExchangeKitError):
    def __init__(self, phi):
        self.phi = phi
        super().__init__(f"no power of {phi!r} is regular")


class RegularizationFailed(ExchangeKitError):
    """No inner inverse completes to a full witness with an invertible phi'.

    Happens exactly when the input is not the sum of an almost-orthogonal
    idempotent family (the documented context for the construction).
    """

    def __init__(self, phi):
        self.phi = phi
        super().__init__(
            f"no regularization of {phi!r} yields an invertible completion; "
            "the family-context precondition does not hold"
        )


class NoIdempotentGenerator(ExchangeKitError):
    def __init__(self, what):
        self.what = what
        super().__init__(f"right ideal {what} has no idempotent generator")


class NoLift(ExchangeKitError):
    """No idempotent preimage exists; for suitable inputs this is a bug."""

    def __init__(self, eps):
        self.eps = eps
        super().__init__(f"idempotent {eps!r} does not lift")


class InvariantViolated(ExchangeKitError):
    """An internal certificate or stage invariant failed re-verification."""

    def __init__(self, where, clause):
        self.where = where
        self.clause = clause
        super().__init__(f"invariant violated at {where}: {clause}")


class SummabilityViolated(ExchangeKitError):
    """A declared support certificate lied about a column."""

    def __init__(self, column):
        self.column = column
        super().__init__(f"family is not summable at column {column}")


class NotSolvable(ExchangeKitError):
    """A truncated chain stage left the tractable class."""

    def __init__(self, stage, reason=""):
        self.stage = stage
        self.reason = reason
        msg = f"stage {stage} not solvable by the splitting backend"
        if reason:
            msg += f": {reason}"
        super().__init__(msg)
