"""Morita contexts from chi-structures, from corings, and by Frobenius transport."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .bimodtensor import BalancedTensor, bilinear_matrix, induced_map, tensor_over
from .coring import (Coring, DualRing, RightComodule, coinvariant_subalgebra, coinvariants, comodule_to_module,
                     default_witness_comodules, dual_ring)
from .exactla import (ContractViolation, Matrix, Subspace, image, is_bijective, kron_vec, lincomb,
                      rank, solution_space, solve, zero_vec)
from .structures import (Algebra, AlgebraMorphism, Bimodule, CheckReport, check_bimodule,
                         check_morphism, hom_eval, opposite, opposite_morphism, regular_bimodule, restrict,
                         right_regular, subalgebra)


class ContextError(AssertionError):
    """A constructed Morita context failed its own axioms."""


def _acc(eq: dict, k, v):
    nv = eq.get(k, 0) + v
    if nv == 0:
        eq.pop(k, None)
    else:
        eq[k] = nv


# ---------------------------------------------------------------- generic contexts

class MoritaContext:
    """(B, R, P, Q, tau, mu) with P a (B,R)- and Q an (R,B)-bimodule.

    ``tau`` is the ambient matrix of the bilinear map P x Q -> B (columns
    indexed p*dim Q + q) and ``mu`` that of Q x P -> R.
    """

    def __init__(self, B: Algebra, R: Algebra, P: Bimodule, Q: Bimodule, tau: Matrix, mu: Matrix, label: str = ""):
        if P.left != B or P.right != R or Q.left != R or Q.right != B:
            raise ContractViolation("P must be a (B,R)- and Q an (R,B)-bimodule")
        if tau.shape != (B.dim, P.dim * Q.dim) or mu.shape != (R.dim, Q.dim * P.dim):
            raise ContractViolation("connecting maps have the wrong shape")
        self.B, self.R, self.P, self.Q, self.tau, self.mu, self.label = B, R, P, Q, tau, mu, label
        self._PQ = None
        self._QP = None

    @property
    def field(self):
        return self.B.field

    def tau_value(self, p: Sequence, q: Sequence) -> list:
        return self.tau @ kron_vec(p, q)

    def mu_value(self, q: Sequence, p: Sequence) -> list:
        return self.mu @ kron_vec(q, p)

    @property
    def PQ(self) -> BalancedTensor:
        if self._PQ is None:
            self._PQ = tensor_over(self.P, self.Q, self.R)
        return self._PQ

    @property
    def QP(self) -> BalancedTensor:
        if self._QP is None:
            self._QP = tensor_over(self.Q, self.P, self.B)
        return self._QP

    def tau_induced(self) -> Matrix:
        return induced_map(self.PQ, self.tau)

    def mu_induced(self) -> Matrix:
        return induced_map(self.QP, self.mu)

    def tau_image(self) -> Subspace:
        return image(self.tau)

    def mu_image(self) -> Subspace:
        return image(self.mu)

    @property
    def tau_surjective(self) -> bool:
        return rank(self.tau) == self.B.dim

    @property
    def mu_surjective(self) -> bool:
        return rank(self.mu) == self.R.dim

    def check(self) -> CheckReport:
        rep = CheckReport("Morita context %s" % self.label)
        B, R, P, Q = self.B, self.R, self.P, self.Q
        rep.extend(check_bimodule(P), "P.")
        rep.extend(check_bimodule(Q), "Q.")
        ep = [P.basis(i) for i in range(P.dim)]
        eq = [Q.basis(i) for i in range(Q.dim)]
        for p in range(P.dim):
            for q in range(Q.dim):
                t = self.tau_value(ep[p], eq[q])
                m = self.mu_value(eq[q], ep[p])
                for r in range(R.dim):
                    if self.tau_value(P.ract[r].column(p), eq[q]) != self.tau_value(ep[p], Q.lact[r].column(q)):
                        rep.add("tau balanced over R", (p, r, q))
                    if self.mu_value(Q.lact[r].column(q), ep[p]) != R.mul(R.basis(r), m):
                        rep.add("mu left R-linear", (r, q, p))
                    if self.mu_value(eq[q], P.ract[r].column(p)) != R.mul(m, R.basis(r)):
                        rep.add("mu right R-linear", (q, p, r))
                for b in range(B.dim):
                    if self.mu_value(Q.ract[b].column(q), ep[p]) != self.mu_value(eq[q], P.lact[b].column(p)):
                        rep.add("mu balanced over B", (q, b, p))
                    if self.tau_value(P.lact[b].column(p), eq[q]) != B.mul(B.basis(b), t):
                        rep.add("tau left B-linear", (b, p, q))
                    if self.tau_value(ep[p], Q.ract[b].column(q)) != B.mul(t, B.basis(b)):
                        rep.add("tau right B-linear", (p, q, b))
        for p in range(P.dim):
            for q in range(Q.dim):
                t = self.tau_value(ep[p], eq[q])
                m = self.mu_value(eq[q], ep[p])
                for p2 in range(P.dim):
                    if P.act_left(t, ep[p2]) != P.act_right(ep[p], self.mu_value(eq[q], ep[p2])):
                        rep.add("tau(p,q) p' = p mu(q,p')", (p, q, p2))
                for q2 in range(Q.dim):
                    if Q.act_left(m, eq[q2]) != Q.act_right(eq[q], self.tau_value(ep[p], eq[q2])):
                        rep.add("mu(q,p) q' = q tau(p,q')", (q, p, q2))
        return rep

    def opposite(self) -> "MoritaContext":
        """The same data read over B^op and R^op: (B^op, R^op, Q, P, tau', mu')."""
        B, R, P, Q = self.B, self.R, self.P, self.Q
        Bo, Ro = opposite(B), opposite(R)
        P2 = Bimodule(Bo, Ro, Q.dim, Q.ract, Q.lact, "%s^op" % Q.label)
        Q2 = Bimodule(Ro, Bo, P.dim, P.ract, P.lact, "%s^op" % P.label)
        F = self.field
        tau = Matrix(F, B.dim, Q.dim * P.dim)
        for p in range(P.dim):
            for q in range(Q.dim):
                for r in range(B.dim):
                    tau.data[r][q * P.dim + p] = self.tau.data[r][p * Q.dim + q]
        mu = Matrix(F, R.dim, P.dim * Q.dim)
        for p in range(P.dim):
            for q in range(Q.dim):
                for r in range(R.dim):
                    mu.data[r][p * Q.dim + q] = self.mu.data[r][q * P.dim + p]
        return MoritaContext(Bo, Ro, P2, Q2, tau, mu, "%s^op" % self.label)


def check_context_morphism(src: MoritaContext, dst: MoritaContext, fB: Matrix, fR: Matrix,
                           fP: Matrix, fQ: Matrix) -> CheckReport:
    """(fB, fR, fP, fQ) : src -> dst is a morphism of Morita contexts."""
    rep = CheckReport("context morphism")
    rep.extend(check_morphism(AlgebraMorphism(src.B, dst.B, fB)), "B.")
    rep.extend(check_morphism(AlgebraMorphism(src.R, dst.R, fR)), "R.")
    P, Q = src.P, src.Q
    for b in range(src.B.dim):
        fb = fB.column(b)
        for p in range(P.dim):
            if fP @ P.lact[b].column(p) != dst.P.act_left(fb, fP.column(p)):
                rep.add("P left B-linear", (b, p))
        for q in range(Q.dim):
            if fQ @ Q.ract[b].column(q) != dst.Q.act_right(fQ.column(q), fb):
                rep.add("Q right B-linear", (q, b))
    for r in range(src.R.dim):
        fr = fR.column(r)
        for p in range(P.dim):
            if fP @ P.ract[r].column(p) != dst.P.act_right(fP.column(p), fr):
                rep.add("P right R-linear", (p, r))
        for q in range(Q.dim):
            if fQ @ Q.lact[r].column(q) != dst.Q.act_left(fr, fQ.column(q)):
                rep.add("Q left R-linear", (r, q))
    for p in range(P.dim):
        for q in range(Q.dim):
            if dst.tau_value(fP.column(p), fQ.column(q)) != fB @ src.tau_value(P.basis(p), Q.basis(q)):
                rep.add("tau compatible", (p, q))
            if dst.mu_value(fQ.column(q), fP.column(p)) != fR @ src.mu_value(Q.basis(q), P.basis(p)):
                rep.add("mu compatible", (q, p))
    return rep


def is_context_isomorphism(src, dst, fB, fR, fP, fQ) -> bool:
    return (check_context_morphism(src, dst, fB, fR, fP, fQ).ok
            and all(is_bijective(M) for M in (fB, fR, fP, fQ)))


# ---------------------------------------------------------------- chi-structures

class ChiStructure:
    """i : A -> R and chi : R -> A (matrix A.dim x R.dim)."""

    def __init__(self, A: Algebra, R: Algebra, i: AlgebraMorphism, chi: Matrix, label: str = ""):
        if i.source != A or i.target != R:
            raise ContractViolation("i must map A into R")
        if chi.shape != (A.dim, R.dim):
            raise ContractViolation("chi has shape %s" % (chi.shape,))
        self.A, self.R, self.i, self.chi, self.label = A, R, i, chi, label

    @property
    def field(self):
        return self.A.field

    def chi_of(self, r: Sequence) -> list:
        return self.chi @ list(r)

    def act(self, a: Sequence, r: Sequence) -> list:
        """a <- r = chi(a r)."""
        return self.chi_of(self.R.mul(self.i(a), r))


def check_chi(s: ChiStructure) -> CheckReport:
    rep = CheckReport("chi-structure")
    rep.extend(check_morphism(s.i), "i.")
    A, R = s.A, s.R
    for r in range(R.dim):
        er = R.basis(r)
        cr = s.chi_of(er)
        for a in range(A.dim):
            if s.chi_of(R.mul(er, s.i(A.basis(a)))) != A.mul(cr, A.basis(a)):
                rep.add("chi right A-linear", (r, a))
        for t in range(R.dim):
            et = R.basis(t)
            if s.chi_of(R.mul(s.i(cr), et)) != s.chi_of(R.mul(er, et)):
                rep.add("chi(chi(r)s) = chi(rs)", (r, t))
        if s.chi_of(s.i(cr)) != cr:
            rep.add("chi idempotent", (r,))
    if s.chi_of(R.unit) != A.unit:
        rep.add("chi(1) = 1", ())
    return rep


def opposite_chi(s: ChiStructure) -> ChiStructure:
    """Left-sided data read as right-sided data over A^op -> R^op, same chi."""
    return ChiStructure(opposite(s.A), opposite(s.R), opposite_morphism(s.i), s.chi, (s.label + "^op").strip("^"))


def algebra_module(s: ChiStructure) -> Bimodule:
    """A as a right R-module, a <- r = chi(ar)."""
    F, A, R = s.field, s.A, s.R
    ract = [Matrix.from_columns(F, A.dim, [s.act(A.basis(a), R.basis(r)) for a in range(A.dim)])
            for r in range(R.dim)]
    return Bimodule(Algebra.ground(F), R, A.dim, None, ract, "A")


def invariants_of(M: Bimodule, s: ChiStructure) -> Subspace:
    """M^R = {m : m.r = m.chi(r) for all r}."""
    R, F = s.R, s.field
    if M.right != R:
        raise ContractViolation("module is not a right R-module")
    blocks = []
    for r in range(R.dim):
        diff = M.ract[r] - M.right_matrix(s.i(s.chi_of(R.basis(r))))
        blocks.extend(diff.data)
    from .exactla import kernel
    return kernel(Matrix.from_rows(F, blocks, M.dim))


def q_space(s: ChiStructure) -> Subspace:
    """Q = {q in R : qr = q chi(r) for all r}."""
    return invariants_of(regular_right(s.R), s)


def regular_right(R: Algebra) -> Bimodule:
    return right_regular(R, "R")


def q_module(s: ChiStructure, B_space: Subspace | None = None) -> tuple[Subspace, Bimodule]:
    """Q with its left R-action; also checks chi(Q) lies in B."""
    R = s.R
    Qs = q_space(s)
    if B_space is None:
        B_space = invariants_of(algebra_module(s), s)
    if not all(B_space.contains(s.chi_of(q)) for q in Qs.basis_vectors()):
        raise ContextError("chi(Q) is not contained in B")
    ground = Algebra.ground(s.field)
    return Qs, _sub_bimodule(Qs, R, ground, lambda r, q: R.mul(r, q), lambda b, q: q, "Q")


def _sub_bimodule(V: Subspace, left: Algebra, right: Algebra, lfun, rfun, label: str) -> Bimodule:
    F = V.field
    vecs = V.basis_vectors()

    def mats(alg, fun):
        out = []
        for k in range(alg.dim):
            cols = []
            for v in vecs:
                c = V.coordinates(fun(alg.basis(k), v))
                if c is None:
                    raise ContextError("%s is not closed under the action" % label)
                cols.append(c)
            out.append(Matrix.from_columns(F, V.dim, cols))
        return out

    return Bimodule(left, right, V.dim, mats(left, lfun), mats(right, rfun), label)


@dataclass
class ChiContext:
    chi: ChiStructure
    context: MoritaContext
    B: Algebra
    B_incl: AlgebraMorphism
    B_space: Subspace
    Q_space: Subspace

    def q_vector(self, coords: Sequence) -> list:
        return self.Q_space.from_coordinates(coords)


def build_context(s: ChiStructure, verify: bool = True) -> ChiContext:
    """(B, R, A, Q, tau, mu) with tau(a (x) q) = chi(aq), mu(q (x) a) = qa."""
    A, R, F = s.A, s.R, s.field
    AR = algebra_module(s)
    Bs = invariants_of(AR, s)
    res = subalgebra(A, Bs)
    if res is None:
        raise ContextError("A^R is not a subalgebra")
    B, incl = res
    P = Bimodule(B, R, A.dim, [A.lmat(incl(B.basis(b))) for b in range(B.dim)], AR.ract, "A")
    Qs, _ = q_module(s, Bs)
    Q = _sub_bimodule(Qs, R, B, lambda r, q: R.mul(r, q), lambda b, q: R.mul(q, s.i(incl(b))), "Q")
    qv = Qs.basis_vectors()

    def tau_fn(a, k):
        c = Bs.coordinates(s.act(A.basis(a), qv[k]))
        if c is None:
            raise ContextError("tau does not land in B")
        return c

    tau = bilinear_matrix(P, Q, B.dim, tau_fn)
    mu = bilinear_matrix(Q, P, R.dim, lambda k, a: R.mul(qv[k], s.i(A.basis(a))))
    ctx = MoritaContext(B, R, P, Q, tau, mu, s.label or "chi")
    if verify:
        rep = ctx.check()
        if not rep.ok:
            raise ContextError("context axioms fail: %r" % (rep.violations[:3],))
    return ChiContext(s, ctx, B, incl, Bs, Qs)


# ---------------------------------------------------------------- strictness

@dataclass
class TauCertificate:
    tau_surjective: bool
    Lambda: list | None
    idempotent: bool | None = None
    corner: bool | None = None          # Lambda R Lambda = Lambda B
    trace_identity_on_B: bool | None = None
    trace_into_B: bool | None = None

    @property
    def consistent(self) -> bool:
        return self.tau_surjective == (self.Lambda is not None)


def tau_certificate(cc: ChiContext) -> TauCertificate:
    """Solve {q in Q, chi(q) = 1}; if solvable, check the corner and trace identities."""
    s, ctx = cc.chi, cc.context
    A, R, F = s.A, s.R, s.field
    qv = cc.Q_space.basis_vectors()
    surj = ctx.tau_surjective
    if not qv:
        return TauCertificate(surj, None)
    M = Matrix.from_columns(F, A.dim, [s.chi_of(q) for q in qv])
    y = solve(M, A.unit)
    if y is None:
        return TauCertificate(surj, None)
    Lam = lincomb(F, R.dim, zip(y, qv))
    idem = R.mul(Lam, Lam) == Lam
    LRL = Subspace.span(F, R.dim, [R.mul(R.mul(Lam, R.basis(r)), Lam) for r in range(R.dim)])
    LB = Subspace.span(F, R.dim, [R.mul(Lam, s.i(cc.B_incl(cc.B.basis(b)))) for b in range(cc.B.dim)])
    tr = [s.act(A.basis(a), Lam) for a in range(A.dim)]
    tr_B = all(cc.B_space.contains(t) for t in tr)
    tr_id = all(s.act(v, Lam) == v for v in cc.B_space.basis_vectors())
    return TauCertificate(surj, Lam, idem, LRL == LB, tr_id, tr_B)


def hom_linear_space(F, n_src: int, n_tgt: int, pairs) -> Subspace:
    """Linear maps phi (n_tgt x n_src, vector index j*n_tgt + i) with phi S = T phi for each (S, T)."""
    eqs = []
    for S, T in pairs:
        for k in range(n_src):
            col = S.column(k)
            for i in range(n_tgt):
                eq: dict = {}
                for j, v in enumerate(col):
                    if v != 0:
                        _acc(eq, j * n_tgt + i, v)
                for i2 in range(n_tgt):
                    t = T.data[i][i2]
                    if t != 0:
                        _acc(eq, k * n_tgt + i2, -t)
                eqs.append(eq)
    return solution_space(F, n_src * n_tgt, eqs)


def _as_vec(M: Matrix) -> list:
    return [M.data[i][j] for j in range(M.cols) for i in range(M.rows)]


def _iso_onto(F, vecs: list, target: Subspace) -> bool:
    if not all(target.contains(v) for v in vecs):
        return False
    return rank(Matrix.from_columns(F, target.ambient_dim, vecs)) == len(vecs) == target.dim if vecs else target.dim == 0


@dataclass
class MuCertificate:
    mu_surjective: bool
    generators: list | None          # (coefficient, Q basis index, A basis index)
    pi: bool | None = None
    pi_prime: bool | None = None
    kappa: bool | None = None
    kappa_prime: bool | None = None

    @property
    def consistent(self) -> bool:
        return self.mu_surjective == (self.generators is not None)


def morita_maps(cc: ChiContext) -> dict:
    """Bijectivity of pi, pi', kappa, kappa' onto the appropriate Hom spaces."""
    s, ctx = cc.chi, cc.context
    A, R, B, F = s.A, s.R, cc.B, s.field
    P, Q = ctx.P, ctx.Q
    nA, nQ, nB = A.dim, Q.dim, B.dim
    # pi : R -> _B End(A), pi(r)(a) = chi(ar)
    EndA = hom_linear_space(F, nA, nA, [(P.lact[b], P.lact[b]) for b in range(nB)])
    pi = _iso_onto(F, [_as_vec(P.ract[r]) for r in range(R.dim)], EndA)
    # pi' : R -> End_B(Q), pi'(r)(q) = rq
    EndQ = hom_linear_space(F, nQ, nQ, [(Q.ract[b], Q.ract[b]) for b in range(nB)])
    pip = _iso_onto(F, [_as_vec(Q.lact[r]) for r in range(R.dim)], EndQ)
    # kappa : Q -> _B Hom(A, B), kappa(q)(a) = chi(aq)
    Bl = [B.lmat(B.basis(b)) for b in range(nB)]
    Br = [B.rmat(B.basis(b)) for b in range(nB)]
    HomAB = hom_linear_space(F, nA, nB, [(P.lact[b], Bl[b]) for b in range(nB)])
    kap = []
    for q in range(nQ):
        M = Matrix.from_columns(F, nB, [ctx.tau_value(P.basis(a), Q.basis(q)) for a in range(nA)])
        kap.append(_as_vec(M))
    kappa = _iso_onto(F, kap, HomAB)
    # kappa' : A -> Hom_B(Q, B), kappa'(a)(q) = chi(aq)
    HomQB = hom_linear_space(F, nQ, nB, [(Q.ract[b], Br[b]) for b in range(nB)])
    kapp = []
    for a in range(nA):
        M = Matrix.from_columns(F, nB, [ctx.tau_value(P.basis(a), Q.basis(q)) for q in range(nQ)])
        kapp.append(_as_vec(M))
    kappa_p = _iso_onto(F, kapp, HomQB)
    return {"pi": pi, "pi_prime": pip, "kappa": kappa, "kappa_prime": kappa_p}


def mu_certificate(cc: ChiContext) -> MuCertificate:
    ctx = cc.context
    R, F = ctx.R, ctx.field
    surj = ctx.mu_surjective
    y = solve(ctx.mu, R.unit) if ctx.mu.cols else None
    if y is None:
        return MuCertificate(surj, None)
    nA = ctx.P.dim
    gens = [(v, k // nA, k % nA) for k, v in enumerate(y) if v != 0]
    maps = morita_maps(cc)
    return MuCertificate(surj, gens, maps["pi"], maps["pi_prime"], maps["kappa"], maps["kappa_prime"])


def omega_bijective(cc: ChiContext, M: Bimodule) -> bool:
    """omega_M : M (x)_R Q -> M^R, m (x) q -> m.q."""
    ctx, s = cc.context, cc.chi
    inv = invariants_of(M, s)
    T = tensor_over(M, ctx.Q, ctx.R)
    qv = cc.Q_space.basis_vectors()
    amb = bilinear_matrix(M, ctx.Q, M.dim, lambda m, k: M.act_right(M.basis(m), qv[k]))
    om = induced_map(T, amb)
    vecs = om.columns()
    if not all(inv.contains(v) for v in vecs):
        return False
    return rank(om) == inv.dim == T.dim


def counit_bijective(cc: ChiContext, M: Bimodule) -> bool:
    """eps_M : M^R (x)_B A -> M, m (x) a -> ma."""
    s = cc.chi
    A, B, F = s.A, cc.B, s.field
    V = invariants_of(M, s)
    vecs = V.basis_vectors()
    MB = _sub_bimodule(V, Algebra.ground(F), B, lambda k, v: v,
                       lambda b, v: M.act_right(v, s.i(cc.B_incl(b))), "M^R")
    BA = Bimodule(B, Algebra.ground(F), A.dim, cc.context.P.lact, None, "_BA")
    T = tensor_over(MB, BA, B)
    amb = bilinear_matrix(MB, BA, M.dim, lambda k, a: M.act_right(vecs[k], s.i(A.basis(a))))
    return is_bijective(induced_map(T, amb))


def a_projective_over_r(cc: ChiContext) -> bool:
    """A_R has a finite dual basis {a_j, phi_j}, phi_j in Hom_R(A, R)."""
    s, F = cc.chi, cc.chi.field
    A, R = s.A, s.R
    P = cc.context.P
    H = hom_linear_space(F, A.dim, R.dim, [(P.ract[r], R.rmat(R.basis(r))) for r in range(R.dim)])
    hv = H.basis_vectors()
    nA, nR, d = A.dim, R.dim, len(hv)
    if d == 0:
        return False
    # unknowns y[j][t]: phi_j = sum_t y[j][t] hv[t]; require sum_j a_j <- phi_j(a) = a
    rows, rhs = [], []
    vals = {}
    for j in range(nA):
        for t in range(d):
            for a in range(nA):
                phi_a = hom_eval(hv[t], A.basis(a), nR)
                vals[(j, t, a)] = s.act(A.basis(j), phi_a)
    for a in range(nA):
        for l in range(nA):
            rows.append([vals[(j, t, a)][l] for j in range(nA) for t in range(d)])
            rhs.append(F.one if a == l else F.zero)
    return solve(Matrix.from_rows(F, rows, nA * d), rhs) is not None


# ---------------------------------------------------------------- corings

def coring_chi(C: Coring, x: Sequence, D: DualRing | None = None) -> tuple[ChiStructure, DualRing]:
    """R = *C, chi(f) = f(x)."""
    D = D if D is not None else dual_ring(C, "left")
    F, nA = C.field, C.base.dim
    chi = Matrix.from_columns(F, nA, [D.evaluate(D.algebra.basis(s), x) for s in range(D.dim)])
    return ChiStructure(C.base, D.algebra, D.embedding, chi, "*C"), D


def q_prime_space(C: Coring, x: Sequence, D: DualRing) -> Subspace:
    """Q' = {q : c_(1) q(c_(2)) = q(c) x}, in dual-ring coordinates."""
    F, Cb = C.field, C.carrier
    x = list(x)
    lifts = [C.CC.lift_terms(C.comult.column(k)) for k in range(C.dim)]
    cols = []
    for s in range(D.dim):
        q = D.algebra.basis(s)
        col = []
        for k in range(C.dim):
            lhs = zero_vec(F, C.dim)
            for coef, p, r in lifts[k]:
                lhs = lincomb(F, C.dim, [(1, lhs), (coef, Cb.act_right(Cb.basis(p), D.evaluate(q, Cb.basis(r))))])
            rhs = Cb.act_left(D.evaluate(q, Cb.basis(k)), x)
            col.extend(u - v for u, v in zip(lhs, rhs))
        cols.append(col)
    from .exactla import kernel
    return kernel(Matrix.from_columns(F, C.dim * C.dim, cols))


@dataclass
class CoringContexts:
    coring: Coring
    x: list
    dual: DualRing
    general: ChiContext
    prime: MoritaContext
    B_prime: Algebra
    B_prime_incl: AlgebraMorphism
    B_prime_space: Subspace
    Q_prime_space: Subspace
    morphism: CheckReport
    identity_check: bool
    inclusions: bool

    @property
    def tau_prime_surjective(self) -> bool:
        return self.prime.tau_surjective


def coring_context(C: Coring, x: Sequence) -> CoringContexts:
    """Both contexts (B', *C, A, Q', tau', mu') and (B, *C, A, Q, tau, mu) and the inclusion morphism."""
    x = list(x)
    s, D = coring_chi(C, x)
    rep = check_chi(s)
    if not rep.ok:
        raise ContextError("chi(f) = f(x) fails the chi-structure conditions: %r" % (rep.violations[:3],))
    gen = build_context(s)
    A, R, F, Cb = C.base, D.algebra, C.field, C.carrier
    Bp, inclp, Bps = coinvariant_subalgebra(C, x)
    Qps = q_prime_space(C, x, D)
    P = Bimodule(Bp, R, A.dim, [A.lmat(inclp(Bp.basis(b))) for b in range(Bp.dim)], gen.context.P.ract, "A")
    Qp = _sub_bimodule(Qps, R, Bp, lambda r, q: R.mul(r, q), lambda b, q: R.mul(q, D.embedding(inclp(b))), "Q'")
    qv = Qps.basis_vectors()

    def tau_fn(a, k):
        c = Bps.coordinates(D.evaluate(qv[k], Cb.act_right(x, A.basis(a))))
        if c is None:
            raise ContextError("q(xa) is not in B'")
        return c

    tau = bilinear_matrix(P, Qp, Bp.dim, tau_fn)
    mu = bilinear_matrix(Qp, P, R.dim, lambda k, a: R.mul(qv[k], D.embedding(A.basis(a))))
    prime = MoritaContext(Bp, R, P, Qp, tau, mu, "B'")
    r2 = prime.check()
    if not r2.ok:
        raise ContextError("primed context axioms fail: %r" % (r2.violations[:3],))
    incl_ok = Bps.is_subspace_of(gen.B_space) and Qps.is_subspace_of(gen.Q_space)
    fB = Matrix.from_columns(F, gen.B.dim, [gen.B_space.coordinates(v) or zero_vec(F, gen.B.dim)
                                            for v in Bps.basis_vectors()])
    fQ = Matrix.from_columns(F, gen.context.Q.dim, [gen.Q_space.coordinates(v) or zero_vec(F, gen.context.Q.dim)
                                                    for v in qv])
    mor = check_context_morphism(prime, gen.context, fB, Matrix.identity(F, R.dim), Matrix.identity(F, A.dim), fQ)
    # (q # i(a)) # q' = q # i(q'(xa))
    ident = True
    for q in qv:
        for a in range(A.dim):
            for q2 in qv:
                lhs = R.mul(R.mul(q, D.embedding(A.basis(a))), q2)
                rhs = R.mul(q, D.embedding(D.evaluate(q2, Cb.act_right(x, A.basis(a)))))
                if lhs != rhs:
                    ident = False
    return CoringContexts(C, x, D, gen, prime, Bp, inclp, Bps, Qps, mor, ident, incl_ok)


def prime_tau_certificate(cx: CoringContexts) -> list | None:
    """Lambda in Q' with Lambda(x) = 1, or None."""
    F, D = cx.coring.field, cx.dual
    qv = cx.Q_prime_space.basis_vectors()
    if not qv:
        return None
    M = Matrix.from_columns(F, cx.coring.base.dim, [D.evaluate(q, cx.x) for q in qv])
    y = solve(M, cx.coring.base.unit)
    if y is None:
        return None
    return lincomb(F, D.dim, zip(y, qv))


@dataclass
class Thm25Report:
    items: dict = field(default_factory=dict)
    witnesses: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(self.items.values())


def thm25_report(cx: CoringContexts, Lam: Sequence | None = None,
                 comodules: Sequence[RightComodule] | None = None) -> Thm25Report:
    """Consequences of tau' being surjective, checked on a witness set."""
    Lam = list(Lam) if Lam is not None else prime_tau_certificate(cx)
    if Lam is None:
        raise ContractViolation("no Lambda with Lambda(x) = 1 in Q'")
    C, x, D = cx.coring, cx.x, cx.dual
    s, gen = cx.general.chi, cx.general
    R, F = D.algebra, C.field
    if comodules is None:
        comodules = default_witness_comodules(C, x, cx.B_prime, cx.B_prime_incl)
    rep = Thm25Report(witnesses=[M.label for M in comodules])
    same = True
    for M in comodules:
        Mod = comodule_to_module(M, D)
        if invariants_of(Mod, s) != coinvariants(M, x):
            same = False
    rep.items["M^*C = M^coC on witnesses"] = same
    rep.items["B = B'"] = gen.B_space == cx.B_prime_space
    rep.items["Q = Q'"] = gen.Q_space == cx.Q_prime_space
    coincide = (rep.items["B = B'"] and rep.items["Q = Q'"]
                and gen.context.tau == cx.prime.tau and gen.context.mu == cx.prime.mu
                and gen.context.P.lact == cx.prime.P.lact and gen.context.P.ract == cx.prime.P.ract
                and gen.context.Q.lact == cx.prime.Q.lact and gen.context.Q.ract == cx.prime.Q.ract)
    rep.items["contexts coincide"] = coincide
    rep.items["Lambda # Lambda = Lambda"] = R.mul(Lam, Lam) == Lam
    LRL = Subspace.span(F, R.dim, [R.mul(R.mul(Lam, R.basis(r)), Lam) for r in range(R.dim)])
    LB = Subspace.span(F, R.dim, [R.mul(Lam, D.embedding(cx.B_prime_incl(cx.B_prime.basis(b))))
                                  for b in range(cx.B_prime.dim)])
    rep.items["Lambda # *C # Lambda = Lambda # B"] = LRL == LB
    return rep


# ---------------------------------------------------------------- Frobenius systems

class FrobeniusSystem:
    """(e, nu) for i : A -> R with e in R (x)_A R and nu : R -> A."""

    def __init__(self, i: AlgebraMorphism, e: Sequence, nu: Matrix, RR: BalancedTensor | None = None):
        self.i = i
        self.RR = RR if RR is not None else frobenius_tensor(i)
        if len(e) != self.RR.dim:
            raise ContractViolation("Casimir element has %d coordinates, tensor has %d" % (len(e), self.RR.dim))
        if nu.shape != (i.source.dim, i.target.dim):
            raise ContractViolation("nu has shape %s" % (nu.shape,))
        self.e = list(e)
        self.nu = nu

    @property
    def A(self) -> Algebra:
        return self.i.source

    @property
    def R(self) -> Algebra:
        return self.i.target

    def contract(self, fn) -> list:
        """Apply the balanced bilinear map fn(r, r') -> R to e."""
        R = self.R
        amb = bilinear_matrix(self.RR.left, self.RR.right, R.dim, lambda p, q: fn(R.basis(p), R.basis(q)))
        return induced_map(self.RR, amb) @ self.e


def frobenius_tensor(i: AlgebraMorphism) -> BalancedTensor:
    reg = regular_bimodule(i.target)
    return tensor_over(restrict(reg, right=i, label="R_A"), restrict(reg, left=i, label="_AR"), i.source)


def check_frobenius(fs: FrobeniusSystem) -> CheckReport:
    rep = CheckReport("Frobenius system")
    A, R, i = fs.A, fs.R, fs.i
    for r in range(R.dim):
        er = R.basis(r)
        for a in range(A.dim):
            ia = i(A.basis(a))
            if fs.nu @ R.mul(ia, er) != A.mul(A.basis(a), fs.nu @ er):
                rep.add("nu left A-linear", (a, r))
            if fs.nu @ R.mul(er, ia) != A.mul(fs.nu @ er, A.basis(a)):
                rep.add("nu right A-linear", (r, a))
    Bm = fs.RR.bimodule
    for r in range(R.dim):
        if Bm.lact[r] @ fs.e != Bm.ract[r] @ fs.e:
            rep.add("r e = e r", (r,))
    nu = fs.nu
    if fs.contract(lambda u, v: R.mul(i(nu @ u), v)) != R.unit:
        rep.add("nu(e1) e2 = 1", ())
    if fs.contract(lambda u, v: R.mul(u, i(nu @ v))) != R.unit:
        rep.add("e1 nu(e2) = 1", ())
    return rep


def opposite_frobenius(fs: FrobeniusSystem) -> FrobeniusSystem:
    """The same system for A^op -> R^op: swap the tensor factors of e."""
    io = opposite_morphism(fs.i)
    RRo = frobenius_tensor(io)
    F, n = fs.R.field, fs.R.dim
    amb = zero_vec(F, n * n)
    for c, p, q in fs.RR.lift_terms(fs.e):
        amb[q * n + p] = amb[q * n + p] + c
    return FrobeniusSystem(io, RRo.project(amb), fs.nu, RRo)


@dataclass
class Transport:
    alpha: Matrix                # A -> R, a -> a chi(e1) e2
    alpha_coords: Matrix         # A -> Q coordinates
    context: MoritaContext       # (B, R, A, A, tau, mu)
    alpha_bijective: bool
    alpha_right_B_linear: bool
    nu_inverse: bool
    context_report: CheckReport
    isomorphism: CheckReport


def frobenius_transport(cc: ChiContext, fs: FrobeniusSystem) -> Transport:
    """Transport of Q to A along alpha(a) = a chi(e1) e2."""
    s = cc.chi
    A, R, B, F = s.A, s.R, cc.B, s.field
    if fs.i.matrix != s.i.matrix:
        raise ContractViolation("Frobenius system is for a different extension")
    u = fs.contract(lambda r, r2: R.mul(s.i(s.chi_of(r)), r2))
    alpha_cols = [R.mul(s.i(A.basis(a)), u) for a in range(A.dim)]
    alpha = Matrix.from_columns(F, R.dim, alpha_cols)
    coords = [cc.Q_space.coordinates(v) for v in alpha_cols]
    if any(c is None for c in coords):
        raise ContextError("alpha does not land in Q")
    ac = Matrix.from_columns(F, cc.Q_space.dim, coords)
    bij = is_bijective(ac)
    rlin = all(alpha @ A.mul(A.basis(a), cc.B_incl(B.basis(b))) == R.mul(alpha_cols[a], s.i(cc.B_incl(B.basis(b))))
               for a in range(A.dim) for b in range(B.dim))
    nu_inv = all(fs.nu @ v == A.basis(a) for a, v in enumerate(alpha_cols)) and \
        all(alpha @ (fs.nu @ q) == q for q in cc.Q_space.basis_vectors())
    ctx = cc.context
    lact = [Matrix.from_columns(F, A.dim, [fs.nu @ R.mul(R.basis(r), alpha_cols[a]) for a in range(A.dim)])
            for r in range(R.dim)]
    ract = [A.rmat(cc.B_incl(B.basis(b))) for b in range(B.dim)]
    Q2 = Bimodule(R, B, A.dim, lact, ract, "A (transported)")

    def tau_fn(a, a2):
        c = cc.B_space.coordinates(s.chi_of(R.mul(s.i(A.basis(a)), alpha_cols[a2])))
        if c is None:
            raise ContextError("transported tau does not land in B")
        return c

    tau = bilinear_matrix(ctx.P, Q2, B.dim, tau_fn)
    mu = bilinear_matrix(Q2, ctx.P, R.dim, lambda a, a2: R.mul(alpha_cols[a], s.i(A.basis(a2))))
    T = MoritaContext(B, R, ctx.P, Q2, tau, mu, "transported")
    iso = check_context_morphism(T, ctx, Matrix.identity(F, B.dim), Matrix.identity(F, R.dim),
                                 Matrix.identity(F, A.dim), ac)
    return Transport(alpha, ac, T, bij, rlin, nu_inv, T.check(), iso)


@dataclass
class DualCan:
    can: Matrix                  # A (x)_B A -> R*, in Hom_k(R, A) coordinates
    r_star: Subspace             # Hom_A(R, A)
    invariants: Subspace         # (R*)^R
    j_p_inverse: bool
    bijective: bool
    dims: tuple


def dual_can(cc: ChiContext) -> DualCan:
    """can(a (x)_B a')(r) = a chi(a' r), with j(a)(r) = a chi(r) and p(f) = f(1)."""
    s = cc.chi
    A, R, B, F = s.A, s.R, cc.B, s.field
    nA, nR = A.dim, R.dim
    Rstar = hom_linear_space(F, nR, nA, [(R.rmat(s.i(A.basis(a))), A.rmat(A.basis(a))) for a in range(nA)])
    # (R*)^R: f(rs) = f(chi(r)s)
    eqs = []
    for r in range(nR):
        cr = s.i(s.chi_of(R.basis(r)))
        for t in range(nR):
            lhs = R.mul(R.basis(r), R.basis(t))
            rhs = R.mul(cr, R.basis(t))
            diff = [u - v for u, v in zip(lhs, rhs)]
            for i in range(nA):
                eq: dict = {}
                for j, v in enumerate(diff):
                    if v != 0:
                        _acc(eq, j * nA + i, v)
                eqs.append(eq)
    inv = solution_space(F, nR * nA, eqs).intersect(Rstar)
    j = [[z for r in range(nR) for z in A.mul(A.basis(a), s.chi_of(R.basis(r)))] for a in range(nA)]
    jp = all(inv.contains(v) for v in j) and rank(Matrix.from_columns(F, nR * nA, j)) == nA == inv.dim
    if jp:
        jp = all(hom_eval(v, R.unit, nA) == A.basis(a) for a, v in enumerate(j))
        jp = jp and all(lincomb(F, nR * nA, zip(hom_eval(f, R.unit, nA), j)) == f for f in inv.basis_vectors())
    AB = Bimodule(Algebra.ground(F), B, nA, None, [A.rmat(cc.B_incl(B.basis(b))) for b in range(B.dim)], "A_B")
    BA = Bimodule(B, Algebra.ground(F), nA, cc.context.P.lact, None, "_BA")
    T = tensor_over(AB, BA, B)
    amb = bilinear_matrix(AB, BA, nR * nA,
                          lambda a, a2: [z for r in range(nR) for z in A.mul(A.basis(a), s.act(A.basis(a2), R.basis(r)))])
    can = induced_map(T, amb)
    if not all(Rstar.contains(v) for v in can.columns()):
        raise ContextError("can does not land in R*")
    bij = rank(can) == T.dim == Rstar.dim
    return DualCan(can, Rstar, inv, jp, bij, (T.dim, Rstar.dim))
