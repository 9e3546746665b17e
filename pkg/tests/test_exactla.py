import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from corings import fixtures as fx
from corings.exactla import (QQ, ContractViolation, Field, Matrix, Subspace, dual_basis, inverse, kernel, quotient,
                             rank, solve, tensor_matrix)

from oracles import bareiss_rank


def test_solve_identity():
    assert solve(Matrix.identity(QQ, 3), [1, 2, 3]) == [1, 2, 3]


def test_solve_zero_system_gives_least_pivot_solution():
    assert solve(Matrix.zeros(QQ, 2, 2), [0, 0]) == [0, 0]


def test_solve_diagonal_over_q():
    x = solve(Matrix.from_rows(QQ, [[2, 0], [0, 3]]), [1, 1])
    assert x == [Fraction(1, 2), Fraction(1, 3)]


def test_solve_inconsistent_and_mismatch():
    assert solve(Matrix.from_rows(QQ, [[1, 1], [1, 1]]), [0, 1]) is None
    with pytest.raises(ContractViolation):
        solve(Matrix.identity(QQ, 2), [1, 2, 3])


def test_kernel_examples():
    assert kernel(Matrix.identity(QQ, 4)).dim == 0
    K = kernel(Matrix.from_rows(QQ, [[1, 1]]))
    assert K == Subspace.span(QQ, 2, [[1, -1]])


def test_multiplication_by_g_has_full_rank():
    H = fx.sweedler_algebra()
    assert rank(H.lmat(H.basis(1))) == 4


def test_quotient_examples():
    Q = quotient(3, Subspace.zero(QQ, 3))
    assert Q.quotient_dim == 3
    assert Q.project == Matrix.identity(QQ, 3) == Q.section
    assert quotient(2, Subspace.span(QQ, 2, [[1, -1]])).quotient_dim == 1


def test_tensor_matrix_examples():
    assert tensor_matrix(Matrix.identity(QQ, 2), Matrix.identity(QQ, 3)) == Matrix.identity(QQ, 6)
    assert tensor_matrix(Matrix.from_rows(QQ, [[3]]), Matrix.from_rows(QQ, [["1/2"]])).data == [[Fraction(3, 2)]]


def test_dual_basis_pairing_is_kronecker_delta():
    _, _, table = dual_basis(QQ, 4)
    assert table == Matrix.identity(QQ, 4)


def test_prime_field_arithmetic():
    F = Field.prime(5)
    assert F(3) * F(2) == F(1)
    assert F("1/2") == F(3)
    with pytest.raises(ContractViolation):
        F("1/5")
    with pytest.raises(ContractViolation):
        Field.prime(6)


def test_field_spec_round_trip():
    for spec in ("q", "fp:7"):
        assert Field.from_spec(spec).spec == spec


small_ints = st.integers(min_value=-4, max_value=4)


matrices = st.integers(1, 5).flatmap(
    lambda r: st.integers(1, 5).flatmap(
        lambda c: st.lists(st.lists(small_ints, min_size=c, max_size=c), min_size=r, max_size=r)))


@settings(max_examples=60, deadline=None)
@given(matrices)
def test_rank_matches_bareiss_over_q(rows):
    assert rank(Matrix.from_rows(QQ, rows)) == bareiss_rank(rows)


@settings(max_examples=60, deadline=None)
@given(matrices)
def test_rank_matches_reference_over_f5(rows):
    F = Field.prime(5)
    assert rank(Matrix.from_rows(F, rows)) == bareiss_rank(rows, 5)


@settings(max_examples=60, deadline=None)
@given(matrices)
def test_rank_nullity(rows):
    M = Matrix.from_rows(QQ, rows)
    K = kernel(M)
    assert rank(M) + K.dim == M.cols
    for v in K.basis_vectors():
        assert all(x == 0 for x in M @ v)


@settings(max_examples=40, deadline=None)
@given(matrices, st.lists(small_ints, min_size=5, max_size=5))
def test_solve_returns_a_solution_when_consistent(rows, b):
    M = Matrix.from_rows(QQ, rows)
    b = b[:M.rows]
    x = solve(M, b)
    consistent = bareiss_rank(rows) == bareiss_rank([r + [v] for r, v in zip(rows, b)])
    assert (x is not None) == consistent
    if x is not None:
        assert M @ x == [QQ(v) for v in b]


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10_000))
def test_inverse_of_random_invertible(seed):
    rng = random.Random(seed)
    F = Field.prime(7)
    M = Matrix(F, 3, 3, [[F.random_element(rng) for _ in range(3)] for _ in range(3)])
    inv = inverse(M)
    assert (inv is not None) == (rank(M) == 3)
    if inv is not None:
        assert M @ inv == Matrix.identity(F, 3)


@settings(max_examples=40, deadline=None)
@given(st.lists(st.lists(small_ints, min_size=4, max_size=4), min_size=0, max_size=4))
def test_canonical_subspace_is_basis_independent(vecs):
    S = Subspace.span(QQ, 4, vecs)
    rng = random.Random(len(vecs))
    mixed = []
    for _ in vecs:
        cs = [rng.randint(-2, 2) for _ in vecs]
        mixed.append([sum(c * v[k] for c, v in zip(cs, vecs)) for k in range(4)])
    T = Subspace.span(QQ, 4, mixed + vecs)
    assert S == T
    assert S.basis == T.basis
