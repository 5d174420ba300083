"""Column-finite rational matrices: summable families, truncated chains, limit demo.

This is the desk-scale model of the countable setting: N x N matrices over Q
with finitely many nonzero entries per column, carrying the finite topology
(x_n -> x iff every column eventually agrees).  Three layers live here:

* ColFinMatrix — lazy, memoized, thread-safe column evaluation; exact
  Fractions everywhere.
* SummableFamily — members plus an explicit per-column support certificate
  {i : x_i column j != 0}; the certificate is audited lazily on access and a
  lie raises SummabilityViolated(column).
* the truncated chain — stages 1..N of the staged construction run inside
  this ring.  Every operand the chain touches has the shape c*I + F with
  c in {0, 1} and F finite, so all arithmetic and every invariant check is
  exact; the corner decomposition reduces to a projection split on the
  image of the corner identity.  Convergence is *reported*, never asserted
  globally: the stabilization report names per-column stabilization stages
  within the window and labels its conclusions depth-limited.

`unit_limit_counterexample` builds the cycle units u_n converging (in the
finite topology) to the right shift S — a limit of units that is injective
(zero right kernel, hence a left non-zero-divisor) but not surjective: the
first basis vector is unreachable, so S is not a unit.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import (
    InvariantViolated,
    NotSolvable,
    PreconditionFailed,
    SummabilityViolated,
)
from .linalg import QQ, identity, kernel_basis, mat_mul, projection_split, rref, solve_right

_PROBE = 4  # extra members audited past a column's declared support


def _q(v) -> Fraction:
    if isinstance(v, Fraction):
        return v
    if isinstance(v, int):
        return Fraction(v)
    if isinstance(v, str):
        return Fraction(v)
    raise TypeError(f"not an exact rational: {v!r}")


class ColFinMatrix:
    """Lazy column-finite matrix; column(j) is a sorted tuple of (row, Fraction)."""

    def __init__(self, column_fn, name: str = ""):
        self._fn = column_fn
        self.name = name
        self._memo = {}
        self._lock = threading.Lock()

    def column(self, j: int):
        with self._lock:
            if j in self._memo:
                return self._memo[j]
        raw = self._fn(j)
        col = tuple(sorted((int(i), _q(v)) for i, v in raw if _q(v) != 0))
        with self._lock:
            return self._memo.setdefault(j, col)

    def entry(self, i: int, j: int) -> Fraction:
        for row, v in self.column(j):
            if row == i:
                return v
        return Fraction(0)

    def window(self, w: int):
        """The leading w x w block as lists of Fractions."""
        block = [[Fraction(0)] * w for _ in range(w)]
        for j in range(w):
            for i, v in self.column(j):
                if i < w:
                    block[i][j] = v
        return block


def zero_matrix() -> ColFinMatrix:
    return ColFinMatrix(lambda j: (), name="0")


def eye() -> ColFinMatrix:
    return ColFinMatrix(lambda j: ((j, Fraction(1)),), name="1")


def basis_matrix(i: int, j: int) -> ColFinMatrix:
    """E_{ij}: single 1 in row i, column j."""
    return ColFinMatrix(lambda c: ((i, Fraction(1)),) if c == j else (),
                        name=f"E[{i},{j}]")


def add(A: ColFinMatrix, B: ColFinMatrix) -> ColFinMatrix:
    def col(j):
        acc = {}
        for i, v in A.column(j):
            acc[i] = acc.get(i, Fraction(0)) + v
        for i, v in B.column(j):
            acc[i] = acc.get(i, Fraction(0)) + v
        return acc.items()
    return ColFinMatrix(col)


def neg(A: ColFinMatrix) -> ColFinMatrix:
    return ColFinMatrix(lambda j: ((i, -v) for i, v in A.column(j)))


def sub(A: ColFinMatrix, B: ColFinMatrix) -> ColFinMatrix:
    return add(A, neg(B))


def scale(q, A: ColFinMatrix) -> ColFinMatrix:
    q = _q(q)
    return ColFinMatrix(lambda j: ((i, q * v) for i, v in A.column(j)))


def mul(A: ColFinMatrix, B: ColFinMatrix) -> ColFinMatrix:
    """(A B) column j = sum over B's column-j entries of scaled A columns.

    Column-finiteness is closed under this product: B's column j is finite
    and each referenced A column is finite, so the result column is finite.
    """
    def col(j):
        acc = {}
        for k, w in B.column(j):
            for i, v in A.column(k):
                acc[i] = acc.get(i, Fraction(0)) + v * w
        return acc.items()
    return ColFinMatrix(col)


@dataclass(frozen=True)
class SummableFamily:
    """Members x_i (i = 1, 2, ...) with a per-column support certificate.

    support(j) lists every member index whose column j is nonzero; the
    certificate is what makes infinite sums column-computable.  Members
    with scalar-plus-finite shape additionally expose spf_member, which the
    truncated chain requires.
    """

    member: object                 # i -> ColFinMatrix, 1-based
    support: object                # j -> sorted tuple of member indices
    size: int | None = None
    spf_member: object = None      # i -> ScalarPlusFinite, when available
    name: str = ""

    def audit_column(self, j: int, through: int):
        """Verify no member i <= through contradicts the certificate for column j."""
        sup = set(self.support(j))
        hi = through if self.size is None else min(through, self.size)
        for i in range(1, hi + 1):
            if i not in sup and self.member(i).column(j):
                raise SummabilityViolated(j)


def partial_sum(family: SummableFamily, n: int) -> ColFinMatrix:
    """Sum of the first n members; audits the certificate on every accessed column."""
    hi = n if family.size is None else min(n, family.size)

    def col(j):
        family.audit_column(j, hi)
        acc = {}
        for i in range(1, hi + 1):
            for row, v in family.member(i).column(j):
                acc[row] = acc.get(row, Fraction(0)) + v
        return acc.items()
    return ColFinMatrix(col)


def family_sum(family: SummableFamily) -> ColFinMatrix:
    """The full sum, computed column-wise from the certificate (plus a probe audit)."""
    def col(j):
        sup = family.support(j)
        probe_to = (max(sup) if sup else 0) + _PROBE
        family.audit_column(j, probe_to)
        acc = {}
        for i in sup:
            if family.size is not None and i > family.size:
                continue
            for row, v in family.member(i).column(j):
                acc[row] = acc.get(row, Fraction(0)) + v
        return acc.items()
    return ColFinMatrix(col)


# ---------------------------------------------------------------------------
# scalar-plus-finite layer: the exact closed form every chain operand takes


def _norm_entries(entries) -> tuple:
    d = {}
    for (i, j), v in (entries.items() if isinstance(entries, dict) else entries):
        q = _q(v)
        if q != 0:
            d[(int(i), int(j))] = d.get((int(i), int(j)), Fraction(0)) + q
    return tuple(sorted((k, v) for k, v in d.items() if v != 0))


@dataclass(frozen=True)
class ScalarPlusFinite:
    """c * I + F with F finitely supported; equality and all ops are exact."""

    c: Fraction
    entries: tuple  # sorted tuple of ((row, col), Fraction), no zero values

    @staticmethod
    def make(c, entries=()) -> "ScalarPlusFinite":
        return ScalarPlusFinite(_q(c), _norm_entries(entries))

    @property
    def support_bound(self) -> int:
        return max((max(i, j) + 1 for (i, j), _ in self.entries), default=0)

    def __add__(self, other):
        return ScalarPlusFinite.make(
            self.c + other.c, tuple(self.entries) + tuple(other.entries))

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return ScalarPlusFinite(-self.c, tuple((k, -v) for k, v in self.entries))

    def __mul__(self, other):
        # (cI + F)(c'I + F') = cc' I + cF' + c'F + FF'
        acc = {}
        for (i, j), v in self.entries:
            acc[(i, j)] = acc.get((i, j), Fraction(0)) + other.c * v
        for (i, j), v in other.entries:
            acc[(i, j)] = acc.get((i, j), Fraction(0)) + self.c * v
        right_cols = {}
        for (k, j), w in other.entries:
            right_cols.setdefault(k, []).append((j, w))
        for (i, k), v in self.entries:
            for j, w in right_cols.get(k, ()):
                acc[(i, j)] = acc.get((i, j), Fraction(0)) + v * w
        return ScalarPlusFinite.make(self.c * other.c, acc)

    def is_idempotent(self) -> bool:
        return self * self == self

    def column(self, j: int):
        acc = {j: self.c} if self.c != 0 else {}
        for (i, jj), v in self.entries:
            if jj == j:
                acc[i] = acc.get(i, Fraction(0)) + v
        return tuple(sorted((i, v) for i, v in acc.items() if v != 0))

    def window(self, w: int):
        block = [[self.c if i == j else Fraction(0) for j in range(w)] for i in range(w)]
        for (i, j), v in self.entries:
            if i < w and j < w:
                block[i][j] += v
        return block

    def to_colfin(self) -> ColFinMatrix:
        return ColFinMatrix(self.column)


SPF_ZERO = ScalarPlusFinite.make(0)
SPF_ONE = ScalarPlusFinite.make(1)


def spf_from_block(block, offset: int = 0) -> ScalarPlusFinite:
    entries = {}
    for i, row in enumerate(block):
        for j, v in enumerate(row):
            entries[(offset + i, offset + j)] = _q(v)
    return ScalarPlusFinite.make(0, entries)


def _spf_decompose_finite(x: ScalarPlusFinite):
    """Suitable decomposition of x + (1-x) = 1 for finite x (c = 0)."""
    m = x.support_bound
    if m == 0:
        return SPF_ZERO, SPF_ONE, SPF_ZERO, SPF_ONE
    split = projection_split(QQ, x.window(m))
    if split is None:
        raise NotSolvable(0, "projection split failed on the leading block")
    eb, rb, sb = split
    e = spf_from_block(eb)
    r = spf_from_block(rb)
    f = SPF_ONE - e
    # outside the block y = 1-x acts as the identity and f as the identity
    s = ScalarPlusFinite.make(1) + spf_from_block(
        [[sb[i][j] - (1 if i == j else 0) for j in range(m)] for i in range(m)])
    return e, f, r, s


def spf_decompose(x: ScalarPlusFinite):
    """Orthogonal idempotents e = r*x, f = s*(1-x) with e + f = 1.

    Handles both tractable shapes: x finite (c = 0) directly, and
    x = 1 - finite (c = 1) by decomposing the complement and swapping.
    """
    y = SPF_ONE - x
    if x.c == 0:
        e, f, r, s = _spf_decompose_finite(x)
    elif x.c == 1:
        f, e, s, r = _spf_decompose_finite(y)
    else:
        raise NotSolvable(0, f"scalar part {x.c} outside {{0, 1}}")
    checks = (
        ("e idempotent", e.is_idempotent()),
        ("f idempotent", f.is_idempotent()),
        ("e f = 0", e * f == SPF_ZERO),
        ("f e = 0", f * e == SPF_ZERO),
        ("e + f = 1", e + f == SPF_ONE),
        ("e = r x", r * x == e),
        ("f = s y", s * y == f),
    )
    for label, ok in checks:
        if not ok:
            raise InvariantViolated("spf_decompose", label)
    return e, f, r, s


def _spf_corner_split(f: ScalarPlusFinite, a: ScalarPlusFinite, b: ScalarPlusFinite):
    """Inside the corner fRf, split a + b = f into f2 = c2*a, f3 = c3*b.

    a must be finite (c = 0).  The corner problem is conjugated onto the
    image U of the leading block of f via a column-space basis B and
    coordinate map C (f_block = B C, C B = I), split there by the
    projection construction, and conjugated back; outside the block f acts
    as the identity and all of that part goes to f3.
    """
    if a == SPF_ZERO:
        return SPF_ZERO, f, SPF_ZERO, f
    if b == SPF_ZERO:
        return f, SPF_ZERO, f, SPF_ZERO
    if a.c != 0:
        raise NotSolvable(0, "corner operand is not a finite block")
    m = max(a.support_bound, f.support_bound)
    fb = f.window(m)
    ab = a.window(m)

    _, pivots = rref(QQ, fb)
    B = [[fb[i][c] for c in pivots] for i in range(m)]   # column-space basis of fb
    C = solve_right(QQ, B, fb)                           # B C = fb
    if C is None:
        raise InvariantViolated("corner_split", "coordinate solve failed")
    d = len(pivots)
    if mat_mul(QQ, C, B) != identity(QQ, d):
        raise InvariantViolated("corner_split", "C B != I on the image basis")

    a_hat = mat_mul(QQ, mat_mul(QQ, C, ab), B)
    split = projection_split(QQ, a_hat)
    if split is None:
        raise NotSolvable(0, "projection split failed inside the corner")
    eps, rho, sigma = split

    f2 = spf_from_block(mat_mul(QQ, mat_mul(QQ, B, eps), C))
    c2 = spf_from_block(mat_mul(QQ, mat_mul(QQ, B, rho), C))
    f3 = f - f2
    c3 = f - spf_from_block(fb) + spf_from_block(mat_mul(QQ, mat_mul(QQ, B, sigma), C))

    checks = (
        ("f2 idempotent", f2.is_idempotent()),
        ("f3 idempotent", f3.is_idempotent()),
        ("f2 + f3 = f", f2 + f3 == f),
        ("f2 f3 = 0", f2 * f3 == SPF_ZERO),
        ("f3 f2 = 0", f3 * f2 == SPF_ZERO),
        ("f2 = c2 a", c2 * a == f2),
        ("f3 = c3 b", c3 * b == f3),
        ("f2 in corner", f * f2 == f2 and f2 * f == f2),
        ("f3 in corner", f * f3 == f3 and f3 * f == f3),
    )
    for label, ok in checks:
        if not ok:
            raise InvariantViolated("corner_split", label)
    return f2, f3, c2, c3


def _spf_refine(E: ScalarPlusFinite, x2: ScalarPlusFinite, x3: ScalarPlusFinite,
                stage: int):
    """Three-term refinement 1 = E + x2 + x3 (E idempotent) with exact witnesses."""
    if E + x2 + x3 != SPF_ONE:
        raise PreconditionFailed("E + x2 + x3 != 1")
    if not E.is_idempotent():
        raise PreconditionFailed("E not idempotent")
    f = SPF_ONE - E
    a = f * x2 * f
    b = f * x3 * f
    if a + b != f:
        raise InvariantViolated(f"stage {stage}", "corner partition broken")
    if a.c != 0:
        raise NotSolvable(stage, "corner operand not a finite block")
    f2, f3, c2, c3 = _spf_corner_split(f, a, b)
    s2 = f2 * c2 * f
    s3 = f3 * c3 * f
    e2 = s2 * x2
    e3 = s3 * x3
    e1 = SPF_ONE - e2 - e3
    checks = (
        ("e1 idempotent", e1.is_idempotent()),
        ("e2 idempotent", e2.is_idempotent()),
        ("e3 idempotent", e3.is_idempotent()),
        ("e1 e2 = 0", e1 * e2 == SPF_ZERO),
        ("e2 e1 = 0", e2 * e1 == SPF_ZERO),
        ("e1 e3 = 0", e1 * e3 == SPF_ZERO),
        ("e3 e1 = 0", e3 * e1 == SPF_ZERO),
        ("e2 e3 = 0", e2 * e3 == SPF_ZERO),
        ("e3 e2 = 0", e3 * e2 == SPF_ZERO),
        ("sum = 1", e1 + e2 + e3 == SPF_ONE),
        ("e1 E = e1", e1 * E == e1),
        ("E e1 = E", E * e1 == E),
    )
    for label, ok in checks:
        if not ok:
            raise InvariantViolated(f"stage {stage}", label)
    return e1, e2, e3, s2, s3


@dataclass(frozen=True)
class TruncationWindow:
    depth: int   # stages to run
    width: int   # rows/columns observed

    def __post_init__(self):
        if self.depth < 1 or self.width < 1:
            raise PreconditionFailed("window depth and width must be >= 1")


@dataclass(frozen=True)
class ColFinStage:
    """Truncated-chain state after stage j; all identities checked exactly."""

    stage: int
    e: tuple
    f: ScalarPlusFinite
    v: ScalarPlusFinite
    v_inv: ScalarPlusFinite
    memberships: tuple
    f_witness: ScalarPlusFinite

    def verify(self, xs, y, diag):
        j = self.stage
        fam = (*self.e, self.f)
        for k, g in enumerate(fam):
            if not g.is_idempotent():
                raise InvariantViolated(f"stage {j}", f"member {k} not idempotent")
        for p in range(len(fam)):
            for qq in range(len(fam)):
                if p != qq and fam[p] * fam[qq] != SPF_ZERO:
                    raise InvariantViolated(f"stage {j}", "(1) family not orthogonal")
        total = SPF_ZERO
        for g in fam:
            total = total + g
        if total != SPF_ONE:
            raise InvariantViolated(f"stage {j}", "(1) family does not sum to 1")
        if self.v * self.v_inv != SPF_ONE or self.v_inv * self.v != SPF_ONE:
            raise InvariantViolated(f"stage {j}", "v_j not a unit")
        for i in range(j):
            if self.v * diag[i] != self.e[i]:
                raise InvariantViolated(f"stage {j}", f"(2) v e_{{{i+1},{i+1}}} != e_{{{i+1},{j}}}")
        if self.v * self.f != self.f:
            raise InvariantViolated(f"stage {j}", "(2) v f != f")
        for i in range(j):
            if self.memberships[i] * xs[i] != self.e[i]:
                raise InvariantViolated(f"stage {j}", f"membership e_{{{i+1},{j}}}")
        if self.f_witness * y != self.f:
            raise InvariantViolated(f"stage {j}", "membership f_j")


@dataclass(frozen=True)
class TruncatedChainReport:
    family_name: str
    depth: int
    width: int
    stages: tuple
    phi: ScalarPlusFinite
    v_inv: ScalarPlusFinite
    agreement_columns: tuple      # per column < width: phi column == v_inv column
    stabilization: dict           # column -> {member i -> first stable stage}
    depth_limited: bool = True

    def phi_window(self):
        return self.phi.window(self.width)

    def v_inv_window(self):
        return self.v_inv.window(self.width)

    def to_payload(self):
        def grid(block):
            return [[str(v) for v in row] for row in block]
        return {
            "family": self.family_name,
            "depth": self.depth,
            "width": self.width,
            "phi_window": grid(self.phi_window()),
            "v_inv_window": grid(self.v_inv_window()),
            "agreement_columns": list(self.agreement_columns),
            "stabilization": {
                str(col): {str(i): s for i, s in sorted(entries.items())}
                for col, entries in sorted(self.stabilization.items())
            },
            "depth_limited": self.depth_limited,
            "stages_run": len(self.stages),
        }


def truncated_chain(family: SummableFamily, window: TruncationWindow) -> TruncatedChainReport:
    """Run stages 1..depth of the staged construction inside the column-finite ring.

    Requires scalar-plus-finite members (the tractable class); y_j is the
    exact tail 1 - (x_1 + ... + x_j).  Stage invariants (1), (2) are checked
    as exact matrix identities, not merely on the window.
    """
    N, W = window.depth, window.width
    if family.spf_member is None:
        raise NotSolvable(0, "family does not provide scalar-plus-finite members")
    n_members = N if family.size is None else min(N, family.size)
    xs = [family.spf_member(i) for i in range(1, n_members + 1)]
    for i, x in enumerate(xs, 1):
        if x.c not in (Fraction(0), Fraction(1)):
            raise NotSolvable(i, f"member {i} scalar part outside {{0, 1}}")
        if i >= 2 and x.c != 0:
            raise NotSolvable(i, f"member {i} past the first must be a finite block")

    # family must sum to 1 on the observed window (certificate-audited)
    total = family_sum(family)
    for j in range(W):
        if total.column(j) != ((j, Fraction(1)),):
            raise PreconditionFailed(f"family does not sum to 1 at column {j}")

    n = len(xs)
    running = xs[0]
    y = SPF_ONE - running                      # exact tail after stage 1
    e1, f1, r1, s1 = spf_decompose(xs[0])
    stages = [ColFinStage(stage=1, e=(e1,), f=f1, v=SPF_ONE, v_inv=SPF_ONE,
                          memberships=(r1,), f_witness=s1)]
    diag = [e1]
    stages[0].verify(xs, y, diag)

    for a in range(2, n + 1):
        prev = stages[-1]
        x_a = xs[a - 1]
        running = running + x_a
        y_a = SPF_ONE - running
        big_e = SPF_ZERO
        for g in prev.e:
            big_e = big_e + g
        x2 = prev.f_witness * x_a
        x3 = prev.f_witness * y_a
        h1, h2, h3, s2, s3 = _spf_refine(big_e, x2, x3, a)

        u = SPF_ONE + h1 - big_e
        u_inv = SPF_ONE - h1 + big_e
        if u * u_inv != SPF_ONE or u_inv * u != SPF_ONE:
            raise InvariantViolated(f"stage {a}", "u not a unit")
        if u * prev.f != prev.f:
            raise InvariantViolated(f"stage {a}", "u does not fix f_{a-1}")
        if (prev.f * (h2 + h3) != h2 + h3) or ((h2 + h3) * prev.f != prev.f):
            raise InvariantViolated(f"stage {a}", "e_aa + f_a not right strongly iso to f_{a-1}")

        new_e = tuple(u * ei for ei in prev.e)
        new_s = tuple(u * si for si in prev.memberships)
        stage = ColFinStage(
            stage=a,
            e=(*new_e, h2),
            f=h3,
            v=u * prev.v,
            v_inv=prev.v_inv * u_inv,
            memberships=(*new_s, s2 * prev.f_witness),
            f_witness=s3 * prev.f_witness,
        )
        diag.append(h2)
        stage.verify(xs, y_a, diag)
        stages.append(stage)

    final = stages[-1]
    phi = SPF_ZERO
    for g in diag:
        phi = phi + g
    # exact finite-depth form of the limit identity: v_N^{-1} = phi_N + f_N
    if final.v_inv != phi + final.f:
        raise InvariantViolated("final", "v_N^{-1} != phi_N + f_N")
    agreement = tuple(final.f.column(j) == () for j in range(W))

    stabilization: dict = {}
    for col in range(W):
        per_member = {}
        for i in range(1, n + 1):
            cols = [stages[t - 1].e[i - 1].column(col) for t in range(i, n + 1)]
            stable_from = n
            for t in range(len(cols) - 1, -1, -1):
                if cols[t] != cols[-1]:
                    stable_from = i + t + 1
                    break
                stable_from = i + t
            per_member[i] = stable_from
        stabilization[col] = per_member

    return TruncatedChainReport(
        family_name=family.name,
        depth=N,
        width=W,
        stages=tuple(stages),
        phi=phi,
        v_inv=final.v_inv,
        agreement_columns=agreement,
        stabilization=stabilization,
    )


# ---------------------------------------------------------------------------
# built-in families


def diagonal_family() -> SummableFamily:
    """x_i = E_{i,i} (0-indexed E[i-1, i-1]): already orthogonal idempotents."""
    def spf(i):
        return ScalarPlusFinite.make(0, {(i - 1, i - 1): 1})
    return SummableFamily(
        member=lambda i: spf(i).to_colfin(),
        support=lambda j: (j + 1,),
        size=None,
        spf_member=spf,
        name="diagonal",
    )


def block2_family() -> SummableFamily:
    """Overlapping 2x2 blocks: x_1 = a at block 0, x_i = b at block i-2 plus a at block i-1.

    a = [[1/2, 1/2], [1/2, 1/2]] and b = 1 - a are complementary idempotent
    blocks, so each 2x2 block k receives a + b = I from members k+1 and k+2.
    """
    h = Fraction(1, 2)
    a = ((h, h), (h, h))
    b = ((h, -h), (-h, h))

    def put(block, k, entries):
        base = 2 * k
        for bi in range(2):
            for bj in range(2):
                entries[(base + bi, base + bj)] = block[bi][bj]

    def spf(i):
        entries: dict = {}
        if i == 1:
            put(a, 0, entries)
        else:
            put(b, i - 2, entries)
            put(a, i - 1, entries)
        return ScalarPlusFinite.make(0, entries)

    def support(j):
        k = j // 2
        return (k + 1, k + 2)

    return SummableFamily(
        member=lambda i: spf(i).to_colfin(),
        support=support,
        size=None,
        spf_member=spf,
        name="block2",
    )


def superdiagonal_family() -> SummableFamily:
    """x_i = E[i-1, i]: a shift-like family used by the ops examples."""
    def spf(i):
        return ScalarPlusFinite.make(0, {(i - 1, i): 1})
    return SummableFamily(
        member=lambda i: spf(i).to_colfin(),
        support=lambda j: (j,) if j >= 1 else (),
        size=None,
        spf_member=spf,
        name="superdiagonal",
    )


BUILTIN_FAMILIES = {
    "diagonal": diagonal_family,
    "block2": block2_family,
    "superdiagonal": superdiagonal_family,
}


def load_family(payload: dict) -> SummableFamily:
    """Build a family from a JSON payload.

    Either {"builtin": "<name>"} or an explicit finite family:
    {"members": [{"entries": [[row, col, "p/q"], ...]}, ...],
     "support": {"<col>": [i, ...], ...}}   (support optional: derived)

    Explicit entries are exact rationals as strings or ints; member indices
    in "support" are 1-based.
    """
    if "builtin" in payload:
        name = payload["builtin"]
        if name not in BUILTIN_FAMILIES:
            raise ValueError(f"unknown builtin family {name!r}")
        return BUILTIN_FAMILIES[name]()
    members_raw = payload["members"]
    spfs = []
    for mi, m in enumerate(members_raw):
        entries = {}
        for row, col, v in m["entries"]:
            entries[(int(row), int(col))] = _q(v)
        c = _q(m.get("scalar", 0))
        spfs.append(ScalarPlusFinite.make(c, entries))
    if "support" in payload:
        table = {int(k): tuple(sorted(int(i) for i in v))
                 for k, v in payload["support"].items()}

        def support(j):
            return table.get(j, tuple(
                i for i, s in enumerate(spfs, 1) if s.c != 0))
    else:
        def support(j):
            return tuple(i for i, s in enumerate(spfs, 1)
                         if s.c != 0 or s.column(j))
    return SummableFamily(
        member=lambda i: spfs[i - 1].to_colfin(),
        support=support,
        size=len(spfs),
        spf_member=lambda i: spfs[i - 1],
        name=str(payload.get("name", "custom")),
    )


# ---------------------------------------------------------------------------
# the limit-of-units counterexample


def cycle_unit(n: int) -> ScalarPlusFinite:
    """u_n: e_i -> e_{i+1} for i < n-1 (0-indexed), e_{n-1} -> e_0, identity beyond."""
    entries: dict = {}
    for j in range(n - 1):
        entries[(j + 1, j)] = Fraction(1)
        entries[(j, j)] = Fraction(-1)
    if n > 1:
        entries[(0, n - 1)] = Fraction(1)
        entries[(n - 1, n - 1)] = Fraction(-1)
    return ScalarPlusFinite.make(1, entries)


def cycle_unit_inverse(n: int) -> ScalarPlusFinite:
    entries: dict = {}
    for j in range(n - 1):
        entries[(j, j + 1)] = Fraction(1)
        entries[(j + 1, j + 1)] = Fraction(-1)
    if n > 1:
        entries[(n - 1, 0)] = Fraction(1)
        entries[(0, 0)] = Fraction(-1)
    return ScalarPlusFinite.make(1, entries)


def shift_matrix() -> ColFinMatrix:
    """The right shift S: e_j -> e_{j+1}; the finite-topology limit of the cycles."""
    return ColFinMatrix(lambda j: ((j + 1, Fraction(1)),), name="S")


@dataclass(frozen=True)
class UnitLimitReport:
    window: int
    depth: int
    unit_checks: tuple        # per n: {"n", "is_unit", "columns_matching_shift"}
    column_stabilization: dict  # column j -> first n with u_m col j = S col j for all m >= n
    injective_on_window: bool
    right_kernel_dim: int
    surjective: bool
    unreachable_basis_index: int
    limit_is_unit: bool

    def to_payload(self):
        return {
            "window": self.window,
            "depth": self.depth,
            "units": [dict(c) for c in self.unit_checks],
            "column_stabilization": {str(k): v for k, v in
                                     sorted(self.column_stabilization.items())},
            "injective_on_window": self.injective_on_window,
            "right_kernel_dim": self.right_kernel_dim,
            "surjective": self.surjective,
            "unreachable_basis_index": self.unreachable_basis_index,
            "limit_is_unit": self.limit_is_unit,
        }


def unit_limit_counterexample(window: int = 8, depth: int = 8) -> UnitLimitReport:
    """The cycle units u_n converge to the right shift S, which is not a unit.

    Checks run exactly: each u_n has an exact two-sided inverse; u_n agrees
    with S on columns 0..n-2; S has zero right kernel over the window (a
    left non-zero-divisor, as any finite-topology limit of units must be);
    S is not surjective because no column ever touches row 0, so the first
    basis vector is unreachable.
    """
    S = shift_matrix()
    unit_checks = []
    for n in range(1, depth + 1):
        u = cycle_unit(n)
        u_inv = cycle_unit_inverse(n)
        if u * u_inv != SPF_ONE or u_inv * u != SPF_ONE:
            raise InvariantViolated("unit_limit", f"u_{n} inverse broken")
        diff = sub(u.to_colfin(), S)
        matching = 0
        for j in range(max(window, n)):
            if diff.column(j) == ():
                matching += 1
            else:
                break
        if matching != n - 1:
            raise InvariantViolated("unit_limit", f"u_{n} agreement width {matching} != {n - 1}")
        unit_checks.append({"n": n, "is_unit": True, "columns_matching_shift": matching})

    stabilization = {}
    for j in range(window):
        # u_n column j equals S column j exactly when n >= j + 2
        for n in range(j + 2, depth + 1):
            if sub(cycle_unit(n).to_colfin(), S).column(j) != ():
                raise InvariantViolated("unit_limit", f"column {j} unstable at n = {n}")
        stabilization[j] = j + 2

    block = [[Fraction(0)] * window for _ in range(window + 1)]
    for j in range(window):
        block[j + 1][j] = Fraction(1)
    kernel = kernel_basis(QQ, block)

    row0_hits = [j for j in range(window) if S.entry(0, j) != 0]
    return UnitLimitReport(
        window=window,
        depth=depth,
        unit_checks=tuple(unit_checks),
        column_stabilization=stabilization,
        injective_on_window=len(kernel) == 0,
        right_kernel_dim=len(kernel),
        surjective=bool(row0_hits),
        unreachable_basis_index=0,
        limit_is_unit=False,
    )
