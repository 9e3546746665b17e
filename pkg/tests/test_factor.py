from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from corings import fixtures as fx
from corings.exactla import QQ, Field, Matrix
from corings.factor import (CleftFactorizationData, ContractViolation, NotHopf, can_report, cfm_context,
                            check_factorization, check_hopf_casimir, check_module_algebra, chi_from_algebra_map,
                            cleft_factorization_check, find_cleft_q, fixed_space, flip_factorization, hopf_frobenius,
                            hopf_layer, hopf_smash, left_context, module_algebra_factorization, cleft_equivalence_check, smash)
from corings.structures import Algebra, Bialgebra, Coalgebra, check_algebra, tensor_algebra

from oracles import bialgebra_compatible, raw_algebra, raw_coalgebra

SIGN_Q = [1, 1, 1, -1]


def sign():
    H, A, act = fx.sign_action()
    return H, A, act, module_algebra_factorization(H, A, act)


def _delta_x_flipped(H):
    """Delta(x) = 1 (x) x + x (x) g, every other coproduct left alone."""
    C = H.coalgebra
    tab = {}
    for i in range(H.dim):
        for c, j, l in C.delta_terms(i):
            tab[(i, l, j) if i == 2 else (i, j, l)] = c
    return Bialgebra(H.algebra, Coalgebra.from_table(QQ, H.dim, tab, C.counit, C.names))


def _u_action():
    """H4 on kC2 = span{1, u}: g.u = -u, x.u = 1."""
    A = fx.group_algebra_c2(QQ, ("1", "u"))
    G = Matrix.from_columns(QQ, 2, [[1, 0], [0, -1]])
    X = Matrix.from_columns(QQ, 2, [[0, 0], [1, 0]])
    return A, [Matrix.identity(QQ, 2), G, X, G @ X]


def test_flip_factorization_gives_the_tensor_algebra():
    A, S = fx.gaussian_rationals(), fx.sweedler_algebra()
    f = flip_factorization(A, S)
    assert check_factorization(f).ok
    assert smash(f).algebra.mult == tensor_algebra(A, S).mult


def test_sign_action_smash_product():
    H, A, act, f = sign()
    assert check_module_algebra(H, A, act).ok
    assert check_factorization(f).ok
    R = smash(f).algebra
    assert R.dim == 4 and check_algebra(R).ok
    # index a*2+s: (1#g)(u#1) = g.u # g = -(u#g), (u#1)(1#g) = u#g
    assert R.mult[1][2] == [0, 0, 0, -1]
    assert R.mult[2][1] == [0, 0, 0, 1]


def test_module_algebra_from_h4_acting_on_kc2():
    H = fx.sweedler_hopf()
    A, act = _u_action()
    assert check_module_algebra(H, A, act).ok
    assert check_factorization(module_algebra_factorization(H, A, act)).ok


def test_flipped_coproduct_mutation_breaks_the_factorization():
    H = fx.sweedler_hopf()
    Hm = _delta_x_flipped(H)
    n, mult, unit = raw_algebra(Hm.algebra)
    _, delta, eps = raw_coalgebra(Hm.coalgebra)
    assert not bialgebra_compatible(n, mult, unit, delta, eps)
    A, act = _u_action()
    rep = check_factorization(module_algebra_factorization(Hm, A, act))
    assert rep.axioms() == {"R(st (x) a) = a_Rr (x) s_r t_R"}
    assert all(v.witness is not None for v in rep.violations)


def test_left_multiplication_is_not_a_module_algebra():
    H = fx.sweedler_hopf()
    Ha = H.algebra
    act = [Ha.lmat(Ha.basis(i)) for i in range(4)]
    assert not check_module_algebra(H, Ha, act).ok
    with pytest.raises(ContractViolation):
        hopf_smash(H, Ha, act)


def test_chi_over_the_ground_field_is_trivial():
    A = fx.sweedler_algebra()
    f = flip_factorization(A, fx.ground())
    fc = chi_from_algebra_map(f, [1])
    assert fixed_space(fc).dim == 4
    lc = left_context(fc)
    assert lc.formulas_agree and lc.Q_space.dim == 4


def test_sign_action_fixed_ring():
    H, A, act, f = sign()
    fc = chi_from_algebra_map(f, H.coalgebra.counit)
    B = fixed_space(fc)
    assert B.dim == 1 and B.contains(A.unit)
    assert left_context(fc).formulas_agree


def test_chi_must_be_an_algebra_map():
    H, A, act, f = sign()
    with pytest.raises(ContractViolation):
        chi_from_algebra_map(f, [1, 2])


def test_integral_of_kc2_over_f3():
    hd = hopf_layer(fx.kc2_hopf(Field.prime(3)))
    assert hd.t == [1, 1]


def test_hopf_layer_of_kc2():
    hd = hopf_layer(fx.kc2_hopf())
    assert hd.t == [1, 1]
    assert hd.distinguished == [1, 1]
    # phi = (eps + signature) / 2
    assert hd.phi == [1, 0]
    assert sum(a * b for a, b in zip(hd.phi, hd.t)) == 1
    assert hd.antipode_inverse == Matrix.identity(QQ, 2)
    assert check_hopf_casimir(hd).ok


def test_hopf_layer_of_sweedler():
    H = fx.sweedler_hopf()
    hd = hopf_layer(H)
    assert hd.distinguished == [1, -1, 0, 0]
    # independent check of h t = eps(h) t and t h = lambda(h) t with fraction tables
    n, mult, _ = raw_algebra(H.algebra)
    _, _, eps = raw_coalgebra(H.coalgebra)
    t = [Fraction(int(v.numerator), int(v.denominator)) for v in hd.t]

    def mul(u, v):
        out = [Fraction(0)] * n
        for (i, j, k), c in mult.items():
            out[k] += u[i] * v[j] * c
        return out

    # t is a multiple of x + gx
    assert t[0] == t[1] == 0 and t[2] == t[3] != 0
    for h in range(n):
        e = [Fraction(int(i == h)) for i in range(n)]
        assert mul(e, t) == [eps[h] * v for v in t]
        assert mul(t, e) == [int(hd.distinguished[h]) * v for v in t]
    assert check_hopf_casimir(hd).ok


def test_not_hopf():
    # monoid {1, z} with z z = z: a bialgebra without antipode
    F = QQ
    A = Algebra.from_table(F, 2, {(0, 0, 0): 1, (0, 1, 1): 1, (1, 0, 1): 1, (1, 1, 1): 1}, [1, 0], ("1", "z"))
    C = Coalgebra.from_table(F, 2, {(0, 0, 0): 1, (1, 1, 1): 1}, [1, 1], ("1", "z"))
    with pytest.raises(NotHopf):
        hopf_layer(Bialgebra(A, C))


def test_frobenius_systems():
    H, A, act = fx.sign_action()
    assert hopf_frobenius(hopf_smash(H, A, act), hopf_layer(H)) is not None
    H3 = fx.sweedler_hopf()
    _, k, triv = fx.trivial_action(H3, fx.ground())
    assert hopf_frobenius(hopf_smash(H3, k, triv), hopf_layer(H3)) is not None


def test_cfm_on_the_sign_action():
    H, A, act = fx.sign_action()
    r = cfm_context(hopf_smash(H, A, act), hopf_layer(H))
    assert r.isomorphic and r.alpha_matches_transport and all(r.maps_equal.values())
    # alpha(1) = 1#1 + 1#g, alpha(u) = u#1 - u#g
    assert r.alpha == Matrix.from_rows(QQ, [[1, 0], [1, 0], [0, 1], [0, -1]])
    assert r.cfm.Q.dim == A.dim


@pytest.mark.parametrize("H", [fx.kc2_hopf(), fx.sweedler_hopf()], ids=["kC2", "H4"])
def test_cfm_on_the_ground_field(H):
    _, k, triv = fx.trivial_action(H, fx.ground())
    r = cfm_context(hopf_smash(H, k, triv), hopf_layer(H))
    assert r.isomorphic
    assert r.cfm.B.dim == 1 and r.cfm.R.dim == H.dim
    # alpha(1) = t
    assert r.alpha.column(0) == hopf_layer(H).t


def test_unit_q_with_flip():
    A = fx.gaussian_rationals()
    data, chk = cleft_factorization_check(flip_factorization(A, fx.ground()), [1], [1, 0])
    assert isinstance(data, CleftFactorizationData)
    assert chk.conditions == (True, True, True)
    # over S = kC2 the flip is never cleft: Q = A (x) (1+g) holds no unit
    f = flip_factorization(A, fx.group_algebra_c2())
    none, chk = cleft_factorization_check(f, [1, 1], [1, 0, 0, 0])
    assert none is None and chk.conditions == (False, False, False)
    rep = can_report(f, [1, 1])
    assert rep.dims == (2, 4) and rep.can_rank == 2


def test_cleft_sign_action():
    H, A, act, f = sign()
    eps = H.coalgebra.counit
    for q in (SIGN_Q, [Fraction(v, 2) for v in SIGN_Q]):
        data, chk = cleft_factorization_check(f, eps, q)
        assert data is not None and chk.conditions == (True, True, True)
    none, chk = cleft_factorization_check(f, eps, [1, 0, 0, 0])
    assert none is None and chk.invertible and chk.conditions == (False, False, False)
    zero, chk0 = cleft_factorization_check(f, eps, [0, 0, 0, 0])
    assert zero is None and not chk0.invertible


def test_find_cleft_q():
    H, A, act, f = sign()
    data, used = find_cleft_q(f, H.coalgebra.counit, seed=3)
    assert data is not None and used >= 1
    H2, A2, triv = fx.trivial_action(fx.kc2_hopf(), fx.group_algebra_c2())
    ft = module_algebra_factorization(H2, A2, triv)
    none, used = find_cleft_q(ft, H2.coalgebra.counit, attempts=8)
    assert none is None


def test_cleft_equivalence_on_the_sign_action():
    H, A, act, f = sign()
    data, _ = cleft_factorization_check(f, H.coalgebra.counit, SIGN_Q)
    rep = cleft_equivalence_check(data)
    assert rep.can_bijective and rep.dims == (4, 4)
    assert rep.ok


def test_cleft_equivalence_trivial_s():
    A = fx.sweedler_algebra()
    f = flip_factorization(A, fx.ground())
    data, _ = cleft_factorization_check(f, [1], [1, 0, 0, 0])
    rep = cleft_equivalence_check(data)
    # A (x)_A A -> Hom(k, A) = A, multiplication up to the quotient basis
    assert rep.dims == (4, 4) and rep.ok


def test_trivial_action_has_a_rank_deficit():
    H, A, triv = fx.trivial_action(fx.kc2_hopf(), fx.group_algebra_c2())
    f = module_algebra_factorization(H, A, triv)
    rep = can_report(f, H.coalgebra.counit)
    assert rep.dims == (2, 4) and rep.can_rank == 2 and not rep.can_bijective


@settings(max_examples=6, deadline=None)
@given(st.sampled_from([0, 3, 5, 7, 11, 13]))
def test_sign_cfm_over_other_fields(p):
    F = QQ if p == 0 else Field.prime(p)
    H, A, act = fx.sign_action(F)
    r = cfm_context(hopf_smash(H, A, act), hopf_layer(H))
    assert r.isomorphic and r.alpha_matches_transport
    f = module_algebra_factorization(H, A, act)
    data, chk = cleft_factorization_check(f, H.coalgebra.counit, SIGN_Q)
    assert data is not None and cleft_equivalence_check(data).can_bijective
