import random

import pytest
from hypothesis import given, settings, strategies as st

from corings import fixtures as fx
from corings.bimodtensor import (BalancednessViolation, bilinear_matrix, check_balanced, induced_map,
                                 left_unit_iso, tensor_maps, tensor_over, unit_iso)
from corings.exactla import QQ, Field, Matrix
from corings.structures import check_bimodule, regular_bimodule, restrict

import modgen
from oracles import balanced_tensor_dim


def _over_q(A):
    u = fx.unit_morphism(A)
    reg = regular_bimodule(A)
    return restrict(reg, right=u), restrict(reg, left=u), u.source


def test_tensor_over_ground_field_is_balanced_already():
    AB, BA, k = _over_q(fx.gaussian_rationals())
    assert tensor_over(AB, BA, k).dim == 4


def test_group_algebra_over_itself():
    A = fx.group_algebra_c2()
    reg = regular_bimodule(A)
    assert tensor_over(reg, reg, A).dim == 2
    iso = unit_iso(reg)
    assert iso.verified
    assert left_unit_iso(reg).verified


def test_multiplication_induces_unit_iso():
    H = fx.sweedler_algebra()
    reg = regular_bimodule(H)
    bt = tensor_over(reg, reg, H)
    mult = bilinear_matrix(reg, reg, 4, lambda i, j: H.mult[i][j])
    m = induced_map(bt, mult)
    assert m.shape == (4, 4)
    assert m @ bt.pure(H.unit, H.unit) == H.unit
    assert unit_iso(reg).forward == m


def test_counit_of_canonical_coring_sends_one_to_one():
    A = fx.gaussian_rationals()
    AB, BA, k = _over_q(A)
    bt = tensor_over(AB, BA, k)
    eps = induced_map(bt, bilinear_matrix(AB, BA, 2, lambda i, j: A.mult[i][j]))
    assert eps @ bt.pure(A.unit, A.unit) == A.unit
    assert eps @ bt.pure(A.basis(1), A.basis(1)) == [-1, 0]


def test_unbalanced_map_is_rejected_with_witness():
    H = fx.sweedler_algebra()
    reg = regular_bimodule(H)
    bt = tensor_over(reg, reg, H)
    # (m, n) -> eps(m) x n, with x non-central
    eps = [1, 1, 0, 0]
    f = bilinear_matrix(reg, reg, 4, lambda i, j: [eps[i] * c for c in H.mult[2][j]])
    w = check_balanced(bt, f)
    assert w is not None
    with pytest.raises(BalancednessViolation) as err:
        induced_map(bt, f)
    assert err.value.witness == w


def test_tensor_bimodule_structure_is_valid():
    H = fx.sweedler_algebra()
    reg = regular_bimodule(H)
    assert check_bimodule(tensor_over(reg, reg, H).bimodule).ok


def test_tensor_of_maps_is_functorial():
    A = fx.group_algebra_c2()
    reg = regular_bimodule(A)
    bt = tensor_over(reg, reg, A)
    I = Matrix.identity(QQ, 2)
    assert tensor_maps(bt, bt, I, I) == Matrix.identity(QQ, bt.dim)


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 100_000), st.sampled_from(["kC2", "dual", "H4"]), st.sampled_from([3, 5, 7]))
def test_tensor_dimension_matches_rank_oracle(seed, name, p):
    rng = random.Random(seed)
    F = Field.prime(p)
    A = modgen.algebra(name, F)
    rm, ln = modgen.random_rep(name, p, rng), modgen.random_rep(name, p, rng)
    M, N = modgen.right_module(A, rm), modgen.left_module(A, ln)
    assert check_bimodule(M).ok and check_bimodule(N).ok
    right = [modgen.transpose(r) for r in rm]
    assert tensor_over(M, N, A).dim == balanced_tensor_dim(right, ln, p)
