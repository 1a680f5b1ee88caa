import random
from fractions import Fraction
from itertools import combinations

import pytest
from hypothesis import given, strategies as st

from movsurf import (RatMatrix, det_bareiss, kernel_basis, rank, rref,
                     solve_membership)


# --- independent oracles (textbook, no shared code with the package) --------

def det_cofactor_oracle(rows):
    n = len(rows)
    if n == 0:
        return Fraction(1)
    if n == 1:
        return rows[0][0]
    total = Fraction(0)
    for j in range(n):
        if not rows[0][j]:
            continue
        minor = [r[:j] + r[j + 1:] for r in rows[1:]]
        term = rows[0][j] * det_cofactor_oracle(minor)
        total += term if j % 2 == 0 else -term
    return total


def rank_by_minors(rows):
    """Largest r such that some r x r minor is nonzero."""
    nr, nc = len(rows), len(rows[0])
    for r in range(min(nr, nc), 0, -1):
        for ri in combinations(range(nr), r):
            for ci in combinations(range(nc), r):
                sub = [[rows[i][j] for j in ci] for i in ri]
                if det_cofactor_oracle(sub) != 0:
                    return r
    return 0


def random_matrix(rng, rows, cols, bound=6):
    return RatMatrix([[Fraction(rng.randint(-bound, bound))
                       for _ in range(cols)] for _ in range(rows)])


# --- rref --------------------------------------------------------------------

def test_rref_identity():
    I = RatMatrix.identity(3)
    R, pivots, T = rref(I)
    assert R == I and T == I and pivots == [0, 1, 2]


def test_rref_rank_one():
    A = RatMatrix([[1, 1], [2, 2]])
    R, pivots, T = rref(A)
    assert R.entries == [[1, 1], [0, 0]]
    assert pivots == [0]


def test_rref_rank3_matrix_against_minor_oracle():
    # 4x6 of rank exactly 3, built as a product and certified by the oracle
    rng = random.Random(11)
    while True:
        L = [[Fraction(rng.randint(-3, 3)) for _ in range(3)] for _ in range(4)]
        Rm = [[Fraction(rng.randint(-3, 3)) for _ in range(6)] for _ in range(3)]
        prod = [[sum(L[i][k] * Rm[k][j] for k in range(3)) for j in range(6)]
                for i in range(4)]
        if rank_by_minors(prod) == 3:
            break
    A = RatMatrix(prod)
    R, pivots, T = rref(A)
    assert len(pivots) == 3
    nonzero_rows = [r for r in R.entries if any(r)]
    assert len(nonzero_rows) == 3


@given(st.integers(0, 10**6))
def test_rref_transform_reproduces_R_and_is_invertible(seed):
    rng = random.Random(seed)
    A = random_matrix(rng, rng.randint(1, 6), rng.randint(1, 6))
    R, pivots, T = rref(A)
    assert T.matmul(A) == R
    assert det_bareiss(T) != 0


@given(st.integers(0, 10**6))
def test_rref_idempotent_and_permutation_invariant(seed):
    rng = random.Random(seed)
    A = random_matrix(rng, rng.randint(1, 6), rng.randint(1, 6))
    R, pivots, _ = rref(A)
    R2, pivots2, _ = rref(R)
    assert R2 == R and pivots2 == pivots
    perm = list(range(A.rows))
    rng.shuffle(perm)
    P = RatMatrix([A.row(i) for i in perm])
    RP, pivotsP, _ = rref(P)
    assert RP == R and pivotsP == pivots


# --- kernels -----------------------------------------------------------------

def test_kernel_of_identity_is_trivial():
    assert kernel_basis(RatMatrix.identity(4)).dim == 0


def test_kernel_of_row_vector():
    kb = kernel_basis(RatMatrix([[1, 1]]))
    assert kb.dim == 1
    assert kb.vectors == [[1, -1]]


def test_kernel_vectors_are_canonical_integers():
    kb = kernel_basis(RatMatrix([[Fraction(1, 2), Fraction(3, 4), 1]]))
    for v in kb.vectors:
        assert all(c.denominator == 1 for c in v)
        assert next(c for c in v if c) > 0


@given(st.integers(0, 10**6))
def test_rank_nullity(seed):
    rng = random.Random(seed)
    A = random_matrix(rng, rng.randint(1, 12), rng.randint(1, 12), bound=4)
    kb = kernel_basis(A)
    assert kb.dim + rank(A) == A.cols
    for v in kb.vectors:
        assert A.matvec(v) == [0] * A.rows


def test_rank_nullity_on_200_matrices():
    rng = random.Random(2024)
    for _ in range(200):
        A = random_matrix(rng, rng.randint(1, 12), rng.randint(1, 12), bound=3)
        assert kernel_basis(A).dim + rank(A) == A.cols


# --- membership solves -------------------------------------------------------

def test_solve_membership_identity():
    A = RatMatrix.identity(3)
    b = [Fraction(5), Fraction(-2), Fraction(7, 3)]
    assert solve_membership(A, b) == b


def test_solve_membership_not_in_span():
    A = RatMatrix([[1], [0]])
    assert solve_membership(A, [Fraction(0), Fraction(1)]) is None


def test_solve_membership_dimension_mismatch():
    with pytest.raises(ValueError):
        solve_membership(RatMatrix.identity(2), [Fraction(1)])


@given(st.integers(0, 10**6))
def test_solve_membership_consistent_system(seed):
    rng = random.Random(seed)
    A = random_matrix(rng, rng.randint(1, 7), rng.randint(1, 7))
    x0 = [Fraction(rng.randint(-5, 5)) for _ in range(A.cols)]
    b = A.matvec(x0)
    x = solve_membership(A, b)
    assert x is not None
    assert A.matvec(x) == b


# --- determinants ------------------------------------------------------------

def test_det_identity_and_2x2():
    assert det_bareiss(RatMatrix.identity(5)) == 1
    rng = random.Random(3)
    for _ in range(20):
        a, b, c, d = (Fraction(rng.randint(-9, 9), rng.randint(1, 3))
                      for _ in range(4))
        assert det_bareiss(RatMatrix([[a, b], [c, d]])) == a * d - b * c


def test_det_non_square_rejected():
    with pytest.raises(ValueError):
        det_bareiss(RatMatrix([[1, 2, 3], [4, 5, 6]]))


@given(st.integers(0, 10**6))
def test_det_5x5_against_cofactor_oracle(seed):
    rng = random.Random(seed)
    A = random_matrix(rng, 5, 5, bound=5)
    assert det_bareiss(A) == det_cofactor_oracle(A.entries)


@given(st.integers(0, 10**6))
def test_det_zero_iff_rank_deficient(seed):
    rng = random.Random(seed)
    n = rng.randint(1, 6)
    A = random_matrix(rng, n, n, bound=3)
    assert (det_bareiss(A) == 0) == (rank(A) < n)


def test_det_with_rational_entries():
    A = RatMatrix([[Fraction(1, 2), Fraction(1, 3)],
                   [Fraction(1, 5), Fraction(1, 7)]])
    assert det_bareiss(A) == Fraction(1, 14) - Fraction(1, 15)
