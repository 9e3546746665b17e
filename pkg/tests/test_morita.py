import random

import pytest
from hypothesis import given, settings, strategies as st

from corings import fixtures as fx
from corings.coring import canonical_coring, comodule_to_module, default_witness_comodules, dual_ring
from corings.entwine import Entwining, entwined_coring, entwining_chi
from corings.exactla import QQ, Matrix, inverse, random_matrix, unit_vec
from corings.morita import (ChiStructure, ContextError, FrobeniusSystem, algebra_module, build_context, check_chi,
                            check_frobenius, coring_chi, coring_context, counit_bijective, dual_can,
                            frobenius_tensor, frobenius_transport, hom_linear_space, invariants_of,
                            mu_certificate, omega_bijective, opposite_chi, q_module, q_space, regular_right,
                            tau_certificate, thm25_report)
from corings.structures import AlgebraMorphism, change_basis_algebra, check_bimodule, hom_eval, identity_morphism


def trivial_chi(A):
    return ChiStructure(A, A, identity_morphism(A), Matrix.identity(QQ, A.dim), "id")


def ent_coring(data):
    A, C, psi, x = data
    e = Entwining(A, C, psi)
    cor, emb = entwined_coring(e)
    return e, cor, emb @ unit_vec(QQ, C.dim, x), unit_vec(QQ, C.dim, x)


def e4():
    return canonical_coring(fx.unit_morphism(fx.gaussian_rationals()))


def test_chi_axioms():
    assert check_chi(trivial_chi(fx.sweedler_algebra())).ok
    e, _, _, xc = ent_coring(fx.e6_data())
    s = entwining_chi(e, xc)
    assert check_chi(s).ok
    doubled = ChiStructure(s.A, s.R, s.i, s.chi.scale(QQ(2)))
    rep = check_chi(doubled)
    assert "chi(1) = 1" in rep.axioms()


def test_invariants_of_trivial_structure():
    A = fx.sweedler_algebra()
    s = trivial_chi(A)
    assert invariants_of(algebra_module(s), s).dim == 4
    Qs, Q = q_module(s)
    assert Qs.dim == 4 and check_bimodule(Q).ok


def _hom_description(s, M):
    """{phi(1) : phi in Hom_R(A, M)}."""
    Am = algebra_module(s)
    H = hom_linear_space(QQ, Am.dim, M.dim, list(zip(Am.ract, M.ract)))
    return [hom_eval(v, s.A.unit, M.dim) for v in H.basis_vectors()], H.dim


@pytest.mark.parametrize("case", ["E4", "E5", "E6"])
def test_invariants_agree_with_hom_description(case):
    if case == "E4":
        cor, x = e4()
    else:
        _, cor, x, _ = ent_coring(fx.e5_data() if case == "E5" else fx.e6_data())
    s, _ = coring_chi(cor, x)
    for M in (algebra_module(s), regular_right(s.R)):
        inv = invariants_of(M, s)
        vals, d = _hom_description(s, M)
        assert d == inv.dim
        assert all(inv.contains(v) for v in vals)


def test_trivial_context_is_strict():
    cc = build_context(trivial_chi(fx.ground()))
    assert (cc.B.dim, cc.chi.R.dim, cc.Q_space.dim) == (1, 1, 1)
    tc = tau_certificate(cc)
    assert tc.Lambda == [1]
    assert mu_certificate(cc).mu_surjective


def test_e4_context_certificates():
    cor, x = e4()
    cc = coring_context(cor, x).general
    tc = tau_certificate(cc)
    assert tc.Lambda is not None and tc.idempotent and tc.trace_identity_on_B
    mc = mu_certificate(cc)
    assert mc.mu_surjective and mc.pi and mc.pi_prime
    comods = default_witness_comodules(cor, x, cc.B, cc.B_incl)
    D = dual_ring(cor)
    for M in comods:
        assert counit_bijective(cc, comodule_to_module(M, D))


def test_e5_context_certificates():
    _, cor, x, _ = ent_coring(fx.e5_data())
    cc = coring_context(cor, x).general
    assert cc.Q_space.dim == 1
    tc = tau_certificate(cc)
    assert tc.tau_surjective and tc.Lambda == [1, 0]
    mc = mu_certificate(cc)
    assert not mc.mu_surjective and mc.generators is None


def test_omega_on_the_algebra_module():
    cor, x = e4()
    cc = coring_context(cor, x).general
    assert omega_bijective(cc, algebra_module(cc.chi))


def test_thm25_report_trivial():
    _, cor, x, _ = ent_coring(fx.e1_data())
    cx = coring_context(cor, x)
    assert thm25_report(cx).ok


def test_opposite_context_round_trip():
    cor, x = e4()
    ctx = coring_context(cor, x).general.context
    back = ctx.opposite().opposite()
    assert back.tau == ctx.tau and back.mu == ctx.mu
    assert ctx.opposite().check().ok


def test_opposite_chi_of_commutative_data():
    s = trivial_chi(fx.gaussian_rationals())
    so = opposite_chi(s)
    assert check_chi(so).ok and q_space(so).dim == 2


def test_trivial_frobenius_transport():
    A = fx.sweedler_algebra()
    s = trivial_chi(A)
    cc = build_context(s)
    RR = frobenius_tensor(s.i)
    fs = FrobeniusSystem(s.i, RR.pure(A.unit, A.unit), Matrix.identity(QQ, 4), RR)
    assert check_frobenius(fs).ok
    tr = frobenius_transport(cc, fs)
    assert tr.alpha == Matrix.identity(QQ, 4)
    assert tr.alpha_bijective and tr.alpha_right_B_linear and tr.nu_inverse
    assert tr.isomorphism.ok


def test_dual_can():
    assert dual_can(build_context(trivial_chi(fx.sweedler_algebra()))).bijective
    cor, x = e4()
    assert dual_can(coring_context(cor, x).general).bijective
    _, c5, x5, _ = ent_coring(fx.e5_data())
    d5 = dual_can(coring_context(c5, x5).general)
    assert not d5.bijective and d5.dims == (1, 2)


def test_invalid_chi_is_refused_as_a_context():
    e, _, _, xc = ent_coring(fx.e5_data())
    s = entwining_chi(e, xc)
    bad = ChiStructure(s.A, s.R, s.i, Matrix.from_rows(QQ, [[1, 1]]))
    assert not check_chi(bad).ok
    with pytest.raises(ContextError):
        build_context(bad)


@settings(max_examples=8, deadline=None)
@given(st.integers(0, 10_000))
def test_certificates_are_basis_independent(seed):
    """Re-basing the algebra changes coordinates but not verdicts or dimensions."""
    rng = random.Random(seed)
    A = fx.gaussian_rationals()
    while True:
        P = random_matrix(QQ, 2, 2, rng)
        if inverse(P) is not None and P.column(0) != [0, 0]:
            break
    A2 = change_basis_algebra(A, P)
    k = fx.ground()
    ref = []
    for alg in (A, A2):
        u = AlgebraMorphism(k, alg, Matrix.from_columns(QQ, 2, [alg.unit]))
        cor, x = canonical_coring(u)
        cc = coring_context(cor, x).general
        tc, mc = tau_certificate(cc), mu_certificate(cc)
        ref.append((cc.B.dim, cc.Q_space.dim, tc.tau_surjective, tc.idempotent, mc.mu_surjective, mc.pi))
    assert ref[0] == ref[1]
