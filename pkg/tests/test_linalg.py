"""Exact Gaussian-elimination helpers over GF(p) and the rationals."""

import random
from fractions import Fraction

from exchange_kit.linalg import (
    QQ,
    PrimeField,
    adjugate_int,
    det_int,
    identity,
    inv_matrix,
    kernel_basis,
    mat_mul,
    projection_split,
    rank,
    rref,
    solve_left,
    solve_right,
    transpose,
)


def rand_matrix(rng, F, n, m):
    if isinstance(F, PrimeField):
        return [[rng.randrange(F.p) for _ in range(m)] for _ in range(n)]
    return [[Fraction(rng.randrange(-4, 5), rng.randrange(1, 4)) for _ in range(m)]
            for _ in range(n)]


FIELDS = [PrimeField(2), PrimeField(3), PrimeField(5), QQ]


def test_rref_shape_and_pivots():
    F = PrimeField(2)
    R, pivots = rref(F, [[1, 1, 0], [1, 1, 1]])
    assert pivots == [0, 2]
    assert R == [[1, 1, 0], [0, 0, 1]]


def test_rref_is_idempotent_and_rank_stable():
    rng = random.Random(7)
    for F in FIELDS:
        for _ in range(25):
            n, m = rng.randrange(1, 5), rng.randrange(1, 5)
            A = rand_matrix(rng, F, n, m)
            R, pivots = rref(F, A)
            R2, pivots2 = rref(F, R)
            assert R2 == R and pivots2 == pivots
            assert rank(F, A) == len(pivots)


def test_kernel_basis_annihilated_and_complete():
    rng = random.Random(11)
    for F in FIELDS:
        for _ in range(25):
            n, m = rng.randrange(1, 5), rng.randrange(1, 5)
            A = rand_matrix(rng, F, n, m)
            ker = kernel_basis(F, A)
            assert rank(F, A) + len(ker) == m   # rank-nullity
            for v in ker:
                col = [[c] for c in v]
                assert all(F.is_zero(w[0]) for w in mat_mul(F, A, col))
            if ker:
                assert rank(F, ker) == len(ker)  # independent


def test_solve_right_and_left():
    rng = random.Random(13)
    for F in FIELDS:
        for _ in range(30):
            n, m, w = rng.randrange(1, 5), rng.randrange(1, 5), rng.randrange(1, 3)
            A = rand_matrix(rng, F, n, m)
            X0 = rand_matrix(rng, F, m, w)
            B = mat_mul(F, A, X0)           # guaranteed consistent
            X = solve_right(F, A, B)
            assert X is not None
            assert mat_mul(F, A, X) == B
            Y = solve_left(F, transpose(A), transpose(B))
            assert Y is not None
            assert mat_mul(F, Y, transpose(A)) == transpose(B)


def test_solve_right_inconsistent():
    F = PrimeField(3)
    # second row of A is zero, B demands something nonzero there
    assert solve_right(F, [[1, 0], [0, 0]], [[1], [2]]) is None


def test_inv_matrix():
    rng = random.Random(17)
    for F in FIELDS:
        eye = identity(F, 3)
        hits = 0
        for _ in range(40):
            A = rand_matrix(rng, F, 3, 3)
            X = inv_matrix(F, A)
            if X is None:
                assert rank(F, A) < 3
            else:
                hits += 1
                assert mat_mul(F, A, X) == eye
                assert mat_mul(F, X, A) == eye
        assert hits > 0
    assert inv_matrix(PrimeField(2), [[1, 1], [1, 1]]) is None


def test_projection_split_postconditions():
    rng = random.Random(19)
    for F in FIELDS:
        for n in (1, 2, 3):
            eye = identity(F, n)
            for _ in range(30):
                x = rand_matrix(rng, F, n, n)
                out = projection_split(F, x)
                assert out is not None      # total over a field
                e, r, s = out
                y = [[F.sub(eye[i][j], x[i][j]) for j in range(n)] for i in range(n)]
                ce = [[F.sub(eye[i][j], e[i][j]) for j in range(n)] for i in range(n)]
                assert mat_mul(F, e, e) == e
                assert mat_mul(F, r, x) == e
                assert mat_mul(F, s, y) == ce
                assert mat_mul(F, e, ce) == [[F.zero] * n for _ in range(n)]


def test_projection_split_fixed_points():
    # x idempotent already: e must equal x (projection along ker x fixing im x)
    F = PrimeField(2)
    x = [[1, 0], [0, 0]]
    e, r, s = projection_split(F, x)
    assert e == x


def test_det_and_adjugate():
    rng = random.Random(23)
    for _ in range(40):
        n = rng.randrange(1, 5)
        A = [[rng.randrange(-5, 6) for _ in range(n)] for _ in range(n)]
        d = det_int(A)
        adj = adjugate_int(A)
        prod = [[sum(A[i][k] * adj[k][j] for k in range(n)) for j in range(n)]
                for i in range(n)]
        assert prod == [[d if i == j else 0 for j in range(n)] for i in range(n)]


def test_det_int_known_values():
    assert det_int([[2]]) == 2
    assert det_int([[1, 2], [3, 4]]) == -2
    assert det_int([[0, 1], [1, 0]]) == -1
    assert det_int([[1, 2, 3], [4, 5, 6], [7, 8, 9]]) == 0
