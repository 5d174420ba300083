"""Exact dense linear algebra over small fields.

Everything here is plain Gaussian elimination on lists of lists, parameterized
by a field object so the same code serves GF(p) (matrix rings over a prime
modulus) and the rationals (the column-finite sandbox).  No floats anywhere.
"""

from __future__ import annotations

from fractions import Fraction


class PrimeField:
    """GF(p) with elements 0..p-1."""

    def __init__(self, p: int):
        self.p = p
        self.zero = 0
        self.one = 1 % p

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return (a * b) % self.p

    def neg(self, a):
        return (-a) % self.p

    def inv(self, a):
        if a % self.p == 0:
            raise ZeroDivisionError("inverse of 0")
        return pow(a, -1, self.p)

    def is_zero(self, a):
        return a % self.p == 0


class RationalField:
    zero = Fraction(0)
    one = Fraction(1)

    @staticmethod
    def add(a, b):
        return a + b

    @staticmethod
    def sub(a, b):
        return a - b

    @staticmethod
    def mul(a, b):
        return a * b

    @staticmethod
    def neg(a):
        return -a

    @staticmethod
    def inv(a):
        return Fraction(1) / a

    @staticmethod
    def is_zero(a):
        return a == 0


QQ = RationalField()


def mat_mul(F, A, B):
    n, m = len(A), len(B[0])
    k = len(B)
    out = [[F.zero] * m for _ in range(n)]
    for i in range(n):
        Ai = A[i]
        row = out[i]
        for t in range(k):
            a = Ai[t]
            if F.is_zero(a):
                continue
            Bt = B[t]
            for j in range(m):
                row[j] = F.add(row[j], F.mul(a, Bt[j]))
    return out


def identity(F, n):
    return [[F.one if i == j else F.zero for j in range(n)] for i in range(n)]


def rref(F, M):
    """Row-reduce a copy of M; returns (matrix, pivot column list)."""
    A = [list(row) for row in M]
    rows = len(A)
    cols = len(A[0]) if rows else 0
    pivots = []
    r = 0
    for c in range(cols):
        pivot = next((i for i in range(r, rows) if not F.is_zero(A[i][c])), None)
        if pivot is None:
            continue
        A[r], A[pivot] = A[pivot], A[r]
        scale = F.inv(A[r][c])
        A[r] = [F.mul(scale, v) for v in A[r]]
        for i in range(rows):
            if i != r and not F.is_zero(A[i][c]):
                factor = A[i][c]
                A[i] = [F.sub(A[i][j], F.mul(factor, A[r][j])) for j in range(cols)]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return A, pivots


def rank(F, M):
    return len(rref(F, M)[1])


def kernel_basis(F, A):
    """Basis of {v : A v = 0}, as a list of column vectors."""
    rows = len(A)
    cols = len(A[0]) if rows else 0
    R, pivots = rref(F, A)
    pivot_set = set(pivots)
    basis = []
    for free in range(cols):
        if free in pivot_set:
            continue
        v = [F.zero] * cols
        v[free] = F.one
        for r, c in enumerate(pivots):
            v[c] = F.neg(R[r][free])
        basis.append(v)
    return basis


def solve_right(F, A, B):
    """X with A X = B, or None when inconsistent.  Free variables are 0."""
    rows = len(A)
    cols = len(A[0]) if rows else 0
    width = len(B[0])
    aug = [list(A[i]) + list(B[i]) for i in range(rows)]
    R, pivots = rref(F, aug)
    for r in range(len(pivots), rows):
        if any(not F.is_zero(R[r][cols + j]) for j in range(width)):
            return None
    for c in pivots:
        if c >= cols:
            return None
    X = [[F.zero] * width for _ in range(cols)]
    for r, c in enumerate(pivots):
        for j in range(width):
            X[c][j] = R[r][cols + j]
    return X


def transpose(M):
    return [list(col) for col in zip(*M)]


def solve_left(F, A, B):
    """X with X A = B, or None."""
    Xt = solve_right(F, transpose(A), transpose(B))
    return None if Xt is None else transpose(Xt)


def inv_matrix(F, A):
    n = len(A)
    X = solve_right(F, A, identity(F, n))
    if X is None:
        return None
    # A X = I in a square setting forces X A = I as well; verify anyway.
    if mat_mul(F, X, A) != identity(F, n):
        return None
    return X


def projection_split(F, x):
    """Idempotent splitting of x + (1-x) = 1 in M_n(F).

    Returns (e, r, s) with e = r*x idempotent, 1-e = s*(1-x), e*(1-e) = 0:
    e is the projection onto a complement W of ker(x) chosen to contain
    ker(1-x), taken along ker(x).  Then ker(e) = ker(x) puts e in M_n(F)*x
    and ker(1-e) = W >= ker(1-x) puts 1-e in M_n(F)*(1-x).
    """
    n = len(x)
    eye = identity(F, n)
    y = [[F.sub(eye[i][j], x[i][j]) for j in range(n)] for i in range(n)]
    ker_x = kernel_basis(F, x)
    fix_x = kernel_basis(F, y)      # ker(1-x); meets ker(x) trivially

    basis = [list(v) for v in fix_x] + [list(v) for v in ker_x]
    w_dim = len(fix_x)
    for j in range(n):
        cand = [F.one if i == j else F.zero for i in range(n)]
        if rank(F, transpose(basis + [cand])) == len(basis) + 1:
            basis.insert(w_dim, cand)   # enlarge W, never ker(x)
            w_dim += 1
    if len(basis) != n:
        return None

    m = transpose(basis)                 # columns: W-part then ker-part
    m_inv = inv_matrix(F, m)
    if m_inv is None:
        return None
    diag = [[F.one if (i == j and i < w_dim) else F.zero for j in range(n)]
            for i in range(n)]
    e = mat_mul(F, mat_mul(F, m, diag), m_inv)
    one_minus_e = [[F.sub(eye[i][j], e[i][j]) for j in range(n)] for i in range(n)]
    r = solve_left(F, x, e)
    s = solve_left(F, y, one_minus_e)
    if r is None or s is None:
        return None
    return e, r, s


def det_int(A) -> int:
    """Exact integer determinant (fraction-free, fine for the small k used here)."""
    n = len(A)
    if n == 0:
        return 1
    if n == 1:
        return A[0][0]
    if n == 2:
        return A[0][0] * A[1][1] - A[0][1] * A[1][0]
    total = 0
    for j in range(n):
        if A[0][j] == 0:
            continue
        minor = [row[:j] + row[j + 1 :] for row in A[1:]]
        term = A[0][j] * det_int(minor)
        total += term if j % 2 == 0 else -term
    return total


def adjugate_int(A):
    """Integer adjugate (transpose of cofactors); adj(A) * A = det(A) * I."""
    n = len(A)
    if n == 1:
        return [[1]]
    adj = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            minor = [row[:i] + row[i + 1 :] for k, row in enumerate(A) if k != j]
            sign = 1 if (i + j) % 2 == 0 else -1
            adj[i][j] = sign * det_int(minor)
    return adj
