import random

from hypothesis import given, settings, strategies as st

from corings import fixtures as fx
from corings.exactla import QQ, Field, Matrix, Subspace, inverse, random_matrix
from corings.structures import (Algebra, Bimodule, change_basis_algebra, change_basis_coalgebra, check_algebra,
                                check_bialgebra, check_bimodule, check_coalgebra, check_morphism,
                                convolution_algebra, convolution_inverse, is_algebra_map_to_ground, matrix_to_hom,
                                opposite, regular_bimodule, subalgebra, tensor_algebra)

from oracles import algebra_axioms_hold, raw_algebra


def _entries(A):
    return {(i, j, l): c for i in range(A.dim) for j in range(A.dim) for l, c in enumerate(A.mult[i][j]) if c != 0}


def test_sweedler_algebra_is_valid():
    H = fx.sweedler_algebra()
    assert check_algebra(H).ok
    assert algebra_axioms_hold(*raw_algebra(H))


def test_g_squared_flipped_is_rejected():
    H = fx.sweedler_algebra()
    e = _entries(H)
    e[(1, 1, 0)] = -1
    rep = check_algebra(Algebra.from_table(QQ, 4, e, H.unit))
    assert not rep.ok
    assert rep.axioms() & {"associativity", "left unit", "right unit"}
    assert all(v.witness for v in rep.violations if v.axiom == "associativity")


def test_ground_fixtures_are_valid():
    A, C, _, _ = fx.e1_data()
    assert check_algebra(A).ok and check_coalgebra(C).ok


def test_bialgebra_fixtures():
    assert check_bialgebra(fx.kc2_hopf()).ok
    assert check_bialgebra(fx.sweedler_hopf()).ok


def test_convolution_over_ground():
    k = fx.ground()
    conv = convolution_algebra(fx.e1_data()[1], k)
    assert conv.dim == 1 and conv.unit == [1]


def test_convolution_of_grouplike_coalgebra_is_pointwise():
    conv = convolution_algebra(fx.group_coalgebra_c2(), fx.ground())
    d1, dg = [1, 0], [0, 1]
    assert conv.unit == [1, 1]
    assert conv.mul(d1, d1) == d1 and conv.mul(dg, dg) == dg
    assert conv.mul(d1, dg) == [0, 0]


def test_convolution_inverses():
    H = fx.sweedler_hopf()
    conv = convolution_algebra(H.coalgebra, H.algebra)
    assert convolution_inverse(conv, conv.unit) == conv.unit
    ident = matrix_to_hom(Matrix.identity(QQ, 4))
    assert convolution_inverse(conv, ident) == matrix_to_hom(fx.sweedler_antipode())
    small = convolution_algebra(fx.group_coalgebra_c2(), fx.ground())
    assert convolution_inverse(small, [1, 0]) is None


def test_convolution_algebra_is_associative():
    H = fx.sweedler_hopf()
    assert check_algebra(convolution_algebra(H.coalgebra, H.algebra)).ok


def test_opposite_and_subalgebras():
    E2 = fx.group_algebra_c2()
    assert opposite(E2).same_as(E2)
    H = fx.sweedler_algebra()
    assert not opposite(H).same_as(H)
    sub = subalgebra(H, Subspace.span(QQ, 4, [[1, 0, 0, 0], [0, 1, 0, 0]]))
    assert sub is not None
    B, incl = sub
    assert B.dim == 2 and check_morphism(incl).ok
    assert B.mul(B.basis(1), B.basis(1)) == B.unit
    assert subalgebra(H, Subspace.span(QQ, 4, [[0, 0, 1, 0]])) is None


def test_bimodule_checker():
    H = fx.sweedler_algebra()
    assert check_bimodule(regular_bimodule(H)).ok
    M = regular_bimodule(H)
    broken = Bimodule(H, H, 4, [M.lact[1], M.lact[0], M.lact[2], M.lact[3]], M.ract)
    assert not check_bimodule(broken).ok


def test_algebra_map_to_ground():
    H = fx.sweedler_algebra()
    assert is_algebra_map_to_ground(H, [1, 1, 0, 0])
    assert is_algebra_map_to_ground(H, [1, -1, 0, 0])
    assert not is_algebra_map_to_ground(H, [1, 1, 1, 0])
    assert not is_algebra_map_to_ground(H, [2, 2, 0, 0])


def test_tensor_algebra_of_group_algebras():
    A = tensor_algebra(fx.group_algebra_c2(), fx.group_algebra_c2())
    assert A.dim == 4 and check_algebra(A).ok


@settings(max_examples=15, deadline=None)
@given(st.integers(0, 10_000), st.sampled_from([None, 5, 7]))
def test_change_of_basis_preserves_axioms(seed, p):
    F = QQ if p is None else Field.prime(p)
    rng = random.Random(seed)
    while True:
        P = random_matrix(F, 4, 4, rng)
        if inverse(P) is not None:
            break
    H = fx.sweedler_hopf(F)
    A2 = change_basis_algebra(H.algebra, P)
    C2 = change_basis_coalgebra(H.coalgebra, P)
    assert check_algebra(A2).ok
    assert check_coalgebra(C2).ok
    if p is None:
        assert algebra_axioms_hold(*raw_algebra(A2))
