"""Corings, grouplikes, comodules, dual rings and the Galois maps."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .bimodtensor import (BalancedTensor, BalancednessViolation, TripleTensor, bilinear_matrix, induced_map,
                          tensor_maps, tensor_over)
from .exactla import (ContractViolation, Matrix, Subspace, is_bijective, is_injective, kernel, lincomb, rank,
                      solution_space, solve, zero_vec)
from .structures import (Algebra, AlgebraMorphism, Bimodule, CheckReport, check_algebra, check_bimodule,
                         check_morphism, forget_left, hom_eval, hom_to_matrix, matrix_to_hom, regular_bimodule,
                         restrict, right_regular, subalgebra)


class Coring:
    """An A-coring: an (A,A)-bimodule C with Delta : C -> C (x)_A C and eps : C -> A."""

    def __init__(self, base: Algebra, carrier: Bimodule, comult: Matrix, counit: Matrix,
                 CC: BalancedTensor | None = None, label: str = ""):
        if carrier.left != base or carrier.right != base:
            raise ContractViolation("carrier must be an (A,A)-bimodule over the base algebra")
        self.base = base
        self.carrier = carrier
        self.CC = CC if CC is not None else tensor_over(carrier, carrier, base)
        if comult.shape != (self.CC.dim, carrier.dim):
            raise ContractViolation("comultiplication has shape %s, expected %s" % (comult.shape, (self.CC.dim, carrier.dim)))
        if counit.shape != (base.dim, carrier.dim):
            raise ContractViolation("counit has shape %s" % (counit.shape,))
        self.comult = comult
        self.counit = counit
        self.label = label
        self._triple = None

    @property
    def field(self):
        return self.base.field

    @property
    def dim(self) -> int:
        return self.carrier.dim

    def delta(self, c: Sequence) -> list:
        return self.comult @ list(c)

    def eps(self, c: Sequence) -> list:
        return self.counit @ list(c)

    @property
    def triple(self) -> TripleTensor:
        if self._triple is None:
            C = self.carrier
            self._triple = TripleTensor(C, C, C, self.base, MN=self.CC, NP=self.CC)
        return self._triple

    def __repr__(self):
        return "Coring(%s, dim=%d over dim %d)" % (self.label or "?", self.dim, self.base.dim)


def check_coring(C: Coring) -> CheckReport:
    rep = CheckReport("coring")
    rep.extend(check_bimodule(C.carrier), "carrier.")
    A, Cb, F = C.base, C.carrier, C.field
    CCb = C.CC.bimodule
    eps_cols = C.counit.columns()
    delta_cols = C.comult.columns()
    for a in range(A.dim):
        ea = A.basis(a)
        for c in range(C.dim):
            if C.eps(Cb.lact[a].column(c)) != A.mul(ea, eps_cols[c]):
                rep.add("counit left A-linear", (a, c))
            if C.eps(Cb.ract[a].column(c)) != A.mul(eps_cols[c], ea):
                rep.add("counit right A-linear", (c, a))
            if C.delta(Cb.lact[a].column(c)) != CCb.lact[a] @ delta_cols[c]:
                rep.add("comultiplication left A-linear", (a, c))
            if C.delta(Cb.ract[a].column(c)) != CCb.ract[a] @ delta_cols[c]:
                rep.add("comultiplication right A-linear", (c, a))
    n = C.dim
    for name, fn in (("left counit law", lambda i, j: Cb.act_left(eps_cols[i], Cb.basis(j))),
                     ("right counit law", lambda i, j: Cb.act_right(Cb.basis(i), eps_cols[j]))):
        try:
            L = induced_map(C.CC, bilinear_matrix(Cb, Cb, n, fn))
        except BalancednessViolation as e:
            rep.add(name, e.witness, "counit contraction is not balanced")
            continue
        for c in range(n):
            if L @ delta_cols[c] != Cb.basis(c):
                rep.add(name, (c,))
    T = C.triple
    for c in range(n):
        lhs = zero_vec(F, T.dim)
        rhs = zero_vec(F, T.dim)
        for coef, i, j in C.CC.lift_terms(delta_cols[c]):
            lhs = lincomb(F, T.dim, [(1, lhs), (coef, T.from_left(delta_cols[i], Cb.basis(j)))])
            rhs = lincomb(F, T.dim, [(1, rhs), (coef, T.from_right(Cb.basis(i), delta_cols[j]))])
        if lhs != rhs:
            rep.add("coassociativity", (c,))
    return rep


def trivial_coring(A: Algebra) -> Coring:
    """C = A with Delta the unit isomorphism and eps = id."""
    reg = regular_bimodule(A)
    CC = tensor_over(reg, reg, A)
    F = A.field
    comult = Matrix.from_columns(F, CC.dim, [CC.pure(A.unit, A.basis(a)) for a in range(A.dim)])
    return Coring(A, reg, comult, Matrix.identity(F, A.dim), CC, label="trivial")


def is_grouplike(C: Coring, x: Sequence) -> bool:
    x = list(x)
    return C.eps(x) == C.base.unit and C.delta(x) == C.CC.pure(x, x)


# ---------------------------------------------------------------- comodules

class RightComodule:
    """A right A-module M with coaction rho : M -> M (x)_A C."""

    def __init__(self, coring: Coring, module: Bimodule, coaction: Matrix,
                 MC: BalancedTensor | None = None, label: str = ""):
        if module.right != coring.base:
            raise ContractViolation("comodule carrier must be a right module over the coring's base")
        self.coring = coring
        self.module = module
        self.MC = MC if MC is not None else tensor_over(module, coring.carrier, coring.base)
        if coaction.shape != (self.MC.dim, module.dim):
            raise ContractViolation("coaction has shape %s" % (coaction.shape,))
        self.coaction = coaction
        self.label = label

    @property
    def dim(self) -> int:
        return self.module.dim

    def rho(self, m: Sequence) -> list:
        return self.coaction @ list(m)

    def __repr__(self):
        return "RightComodule(%s, dim=%d)" % (self.label or "?", self.dim)


def check_comodule(M: RightComodule) -> CheckReport:
    rep = CheckReport("right comodule %s" % M.label)
    C = M.coring
    A, Cb, Mm, F = C.base, C.carrier, M.module, C.field
    rep.extend(check_bimodule(Mm), "module.")
    MCb = M.MC.bimodule
    rho_cols = M.coaction.columns()
    for a in range(A.dim):
        for m in range(M.dim):
            if M.rho(Mm.ract[a].column(m)) != MCb.ract[a] @ rho_cols[m]:
                rep.add("coaction right A-linear", (m, a))
    eps_cols = C.counit.columns()
    try:
        L = induced_map(M.MC, bilinear_matrix(Mm, Cb, M.dim, lambda i, j: Mm.act_right(Mm.basis(i), eps_cols[j])))
        for m in range(M.dim):
            if L @ rho_cols[m] != Mm.basis(m):
                rep.add("coaction counit law", (m,))
    except BalancednessViolation as e:
        rep.add("coaction counit law", e.witness, "counit contraction is not balanced")
    T = TripleTensor(Mm, Cb, Cb, A, MN=M.MC, NP=C.CC)
    delta_cols = C.comult.columns()
    for m in range(M.dim):
        lhs = zero_vec(F, T.dim)
        rhs = zero_vec(F, T.dim)
        for coef, i, j in M.MC.lift_terms(rho_cols[m]):
            lhs = lincomb(F, T.dim, [(1, lhs), (coef, T.from_left(rho_cols[i], Cb.basis(j)))])
            rhs = lincomb(F, T.dim, [(1, rhs), (coef, T.from_right(Mm.basis(i), delta_cols[j]))])
        if lhs != rhs:
            rep.add("coaction coassociativity", (m,))
    return rep


def grouplike_comodule(C: Coring, x: Sequence) -> RightComodule:
    """A as a right comodule via rho(a) = 1 (x) xa."""
    A, Cb = C.base, C.carrier
    M = right_regular(A, "A")
    MC = tensor_over(M, Cb, A)
    cols = [MC.pure(A.unit, Cb.act_right(x, A.basis(a))) for a in range(A.dim)]
    return RightComodule(C, M, Matrix.from_columns(C.field, MC.dim, cols), MC, "A")


def coring_comodule(C: Coring) -> RightComodule:
    """C as a right comodule over itself via Delta."""
    M = forget_left(C.carrier, "C")
    MC = tensor_over(M, C.carrier, C.base)
    return RightComodule(C, M, C.comult, MC, "C")


def tensor_comodule(C: Coring, N: Bimodule, label: str = "") -> RightComodule:
    """N (x)_A C for a right A-module N, with rho = N (x) Delta."""
    if N.right != C.base:
        raise ContractViolation("N must be a right module over the coring's base")
    T = TripleTensor(N, C.carrier, C.carrier, C.base, NP=C.CC)
    delta_cols = C.comult.columns()
    amb = bilinear_matrix(N, C.carrier, T.dim, lambda i, j: T.from_right(N.basis(i), delta_cols[j]))
    rho = induced_map(T.MN, amb)
    return RightComodule(C, T.MN.bimodule, rho, T.outer, label or "%s(x)C" % (N.label or "N"))


def coinvariants(M: RightComodule, x: Sequence) -> Subspace:
    """{m : rho(m) = m (x) x}."""
    F = M.coring.field
    cols = [M.MC.pure(M.module.basis(m), x) for m in range(M.dim)]
    diff = M.coaction - Matrix.from_columns(F, M.MC.dim, cols)
    return kernel(diff)


def induced_comodule(C: Coring, x: Sequence, N: Bimodule, incl: AlgebraMorphism, label: str = "") -> RightComodule:
    """N (x)_B A with rho(n (x) a) = (n (x) 1) (x) xa, for B -> A landing in the coinvariants."""
    A, Cb, F = C.base, C.carrier, C.field
    BA = restrict(regular_bimodule(A), left=incl)
    BA = Bimodule(incl.source, A, A.dim, BA.lact, BA.ract, "A")
    NA = tensor_over(N, BA, incl.source)
    Mod = NA.bimodule
    MC = tensor_over(Mod, Cb, A)
    amb = bilinear_matrix(N, BA, MC.dim,
                          lambda i, j: MC.pure(NA.pure(N.basis(i), A.unit), Cb.act_right(x, A.basis(j))))
    rho = induced_map(NA, amb)
    M = RightComodule(C, Mod, rho, MC, label or "N(x)_B A")
    M.tensor = NA
    return M


# ---------------------------------------------------------------- dual rings

class DualRing:
    """*C (side 'left') or C* (side 'right') realized inside Hom_k(C, A).

    Elements are coordinate vectors with respect to ``space``'s echelon basis.
    """

    def __init__(self, coring: Coring, side: str, space: Subspace, algebra: Algebra, embedding: AlgebraMorphism):
        self.coring = coring
        self.side = side
        self.space = space
        self.algebra = algebra
        self.embedding = embedding
        self._dual_basis = None

    @property
    def dim(self) -> int:
        return self.algebra.dim

    def to_hom(self, coords: Sequence) -> list:
        return self.space.from_coordinates(coords)

    def from_hom(self, h: Sequence) -> list | None:
        return self.space.coordinates(h)

    def evaluate(self, coords: Sequence, c: Sequence) -> list:
        return hom_eval(self.to_hom(coords), c, self.coring.base.dim)

    def dual_basis(self) -> list:
        """Coordinates f_j with sum_j f_j(c) c_j = c (left side only)."""
        if self._dual_basis is None:
            self._dual_basis = _left_dual_basis(self)
        return self._dual_basis


def _linearity_equations(C: Coring, side: str):
    A, Cb = C.base, C.carrier
    nA, nC = A.dim, C.dim
    for s in range(nA):
        act = Cb.lact[s] if side == "left" else Cb.ract[s]
        for k in range(nC):
            moved = act.column(k)
            for i in range(nA):
                eq: dict = {}
                for j, v in enumerate(moved):
                    if v != 0:
                        eq[j * nA + i] = eq.get(j * nA + i, 0) + v
                for i2 in range(nA):
                    m = A.mult[s][i2][i] if side == "left" else A.mult[i2][s][i]
                    if m != 0:
                        eq[k * nA + i2] = eq.get(k * nA + i2, 0) - m
                yield eq


def hom_space(C: Coring, side: str = "left") -> Subspace:
    """Hom_A(C, A) inside Hom_k(C, A): left- or right-A-linear maps."""
    if side not in ("left", "right"):
        raise ContractViolation("side must be 'left' or 'right'")
    return solution_space(C.field, C.dim * C.base.dim, _linearity_equations(C, side))


def dual_ring(C: Coring, side: str = "left") -> DualRing:
    """*C with (f#g)(c) = g(c_(1) f(c_(2))), or C* with (f#g)(c) = f(g(c_(1)) c_(2))."""
    K = hom_space(C, side)
    A, Cb, F = C.base, C.carrier, C.field
    nA, nC = A.dim, C.dim
    basis = K.basis_vectors()
    d = len(basis)
    delta_terms = [C.CC.lift_terms(C.comult.column(k)) for k in range(nC)]
    # w[u][k]: c_(1) f_u(c_(2)) (left) or f_u(c_(1)) c_(2) (right), as vectors of C
    w = []
    for f in basis:
        row = []
        for k in range(nC):
            acc = zero_vec(F, nC)
            for coef, p, q in delta_terms[k]:
                if side == "left":
                    v = Cb.act_right(Cb.basis(p), hom_eval(f, Cb.basis(q), nA))
                else:
                    v = Cb.act_left(hom_eval(f, Cb.basis(p), nA), Cb.basis(q))
                acc = lincomb(F, nC, [(1, acc), (coef, v)])
            row.append(acc)
        w.append(row)
    mult = []
    for u in range(d):
        row = []
        for v in range(d):
            if side == "left":
                outer, inner = basis[v], w[u]
            else:
                outer, inner = basis[u], w[v]
            h = []
            for k in range(nC):
                h.extend(hom_eval(outer, inner[k], nA))
            coords = K.coordinates(h)
            if coords is None:
                raise ContractViolation("dual ring product leaves Hom_A(C, A); the coring axioms fail")
            row.append(coords)
        mult.append(row)
    unit = K.coordinates(matrix_to_hom(C.counit))
    if unit is None:
        raise ContractViolation("counit is not %s A-linear" % side)
    R = Algebra(F, d, mult, unit)
    emb_cols = []
    for a in range(nA):
        h = []
        for k in range(nC):
            e = C.counit.column(k)
            h.extend(A.mul(e, A.basis(a)) if side == "left" else A.mul(A.basis(a), e))
        coords = K.coordinates(h)
        if coords is None:
            raise ContractViolation("embedding of A does not land in the dual ring")
        emb_cols.append(coords)
    return DualRing(C, side, K, R, AlgebraMorphism(A, R, Matrix.from_columns(F, d, emb_cols)))


def check_dual_ring(D: DualRing) -> CheckReport:
    """Associativity, unit, embedding, and (i(a)#f)(c) = f(ca), (f#i(a))(c) = f(c)a (left side)."""
    rep = CheckReport("dual ring (%s)" % D.side)
    rep.extend(check_algebra(D.algebra), "algebra.")
    rep.extend(check_morphism(D.embedding), "embedding.")
    C = D.coring
    A, Cb = C.base, C.carrier
    R = D.algebra
    for a in range(A.dim):
        ia = D.embedding(A.basis(a))
        for s in range(R.dim):
            f = R.basis(s)
            for k in range(C.dim):
                ck = Cb.basis(k)
                if D.side == "left":
                    if D.evaluate(R.mul(ia, f), ck) != D.evaluate(f, Cb.act_right(ck, A.basis(a))):
                        rep.add("(i(a)#f)(c) = f(ca)", (a, s, k))
                    if D.evaluate(R.mul(f, ia), ck) != A.mul(D.evaluate(f, ck), A.basis(a)):
                        rep.add("(f#i(a))(c) = f(c)a", (s, a, k))
                else:
                    if D.evaluate(R.mul(f, ia), ck) != D.evaluate(f, Cb.act_left(A.basis(a), ck)):
                        rep.add("(f#i(a))(c) = f(ac)", (s, a, k))
                    if D.evaluate(R.mul(ia, f), ck) != A.mul(A.basis(a), D.evaluate(f, ck)):
                        rep.add("(i(a)#f)(c) = af(c)", (a, s, k))
    return rep


def _left_dual_basis(D: DualRing) -> list:
    C = D.coring
    A, Cb, F = C.base, C.carrier, C.field
    nC, d = C.dim, D.dim
    vals = [[D.evaluate(R_s, Cb.basis(k)) for k in range(nC)] for R_s in (D.algebra.basis(s) for s in range(d))]
    # unknown y[j][s] at index j*d+s; equation (k, l): sum y[j][s] (f_s(c_k) c_j)_l = delta_kl
    rows = []
    rhs = []
    acted = {}
    for k in range(nC):
        for j in range(nC):
            for s in range(d):
                acted[(k, j, s)] = Cb.act_left(vals[s][k], Cb.basis(j))
    for k in range(nC):
        for l in range(nC):
            rows.append([acted[(k, j, s)][l] for j in range(nC) for s in range(d)])
            rhs.append(F.one if k == l else F.zero)
    y = solve(Matrix.from_rows(F, rows, nC * d), rhs)
    if y is None:
        raise ContractViolation("C has no finite dual basis over A")
    return [y[j * d:(j + 1) * d] for j in range(nC)]


def comodule_to_module(M: RightComodule, D: DualRing) -> Bimodule:
    """Right *C-module with m.f = m_[0] f(m_[1])."""
    if D.side != "left":
        raise ContractViolation("comodules become modules over the left dual ring")
    Mm = M.module
    F = M.coring.field
    lifts = [M.MC.lift_terms(M.coaction.column(m)) for m in range(M.dim)]
    ract = []
    for s in range(D.dim):
        cols = []
        for m in range(M.dim):
            acc = zero_vec(F, M.dim)
            for coef, i, j in lifts[m]:
                fv = D.evaluate(D.algebra.basis(s), M.coring.carrier.basis(j))
                acc = lincomb(F, M.dim, [(1, acc), (coef, Mm.act_right(Mm.basis(i), fv))])
            cols.append(acc)
        ract.append(Matrix.from_columns(F, M.dim, cols))
    return Bimodule(Algebra.ground(F), D.algebra, M.dim, None, ract, "%s as *C-module" % M.label)


def module_to_comodule(N: Bimodule, D: DualRing, label: str = "") -> RightComodule:
    """rho(m) = sum_j (m.f_j) (x)_A c_j over a dual basis {c_j, f_j}."""
    C = D.coring
    A, F = C.base, C.field
    ract_A = [N.right_matrix(D.embedding(A.basis(a))) for a in range(A.dim)]
    Mod = Bimodule(Algebra.ground(F), A, N.dim, None, ract_A, label or N.label)
    MC = tensor_over(Mod, C.carrier, A)
    fs = D.dual_basis()
    cols = []
    for m in range(N.dim):
        acc = zero_vec(F, MC.dim)
        for j, fj in enumerate(fs):
            acc = lincomb(F, MC.dim, [(1, acc), (1, MC.pure(N.act_right(N.basis(m), fj), C.carrier.basis(j)))])
        cols.append(acc)
    return RightComodule(C, Mod, Matrix.from_columns(F, MC.dim, cols), MC, label or N.label)


# ---------------------------------------------------------------- canonical coring and can

class CanonicalCoring(Coring):
    """D = A (x)_B A with Delta(a (x) b) = (a (x) 1) (x)_A (1 (x) b) and eps(a (x) b) = ab."""

    tensor: BalancedTensor
    inclusion: AlgebraMorphism


def _base_bimodules(incl: AlgebraMorphism):
    A, B = incl.target, incl.source
    reg = regular_bimodule(A)
    AB = restrict(reg, right=incl, label="A_B")
    BA = restrict(reg, left=incl, label="_BA")
    return AB, BA


def canonical_coring(incl: AlgebraMorphism) -> tuple[CanonicalCoring, list]:
    A, B, F = incl.target, incl.source, incl.target.field
    AB, BA = _base_bimodules(incl)
    T = tensor_over(AB, BA, B)
    Db = T.bimodule
    DD = tensor_over(Db, Db, A)
    one = A.unit
    comult = induced_map(T, bilinear_matrix(AB, BA, DD.dim,
                                            lambda p, q: DD.pure(T.pure(A.basis(p), one), T.pure(one, A.basis(q)))))
    counit = induced_map(T, bilinear_matrix(AB, BA, A.dim, lambda p, q: A.mult[p][q]))
    D = CanonicalCoring(A, Db, comult, counit, DD, label="A(x)_B A")
    D.tensor = T
    D.inclusion = incl
    return D, T.pure(one, one)


def coinvariant_subalgebra(C: Coring, x: Sequence) -> tuple[Algebra, AlgebraMorphism, Subspace]:
    """B = A^{coC} as a subalgebra of A."""
    Bs = coinvariants(grouplike_comodule(C, x), x)
    res = subalgebra(C.base, Bs)
    if res is None:
        raise ContractViolation("coinvariants of A are not a subalgebra; x is not grouplike")
    return res[0], res[1], Bs


@dataclass
class GaloisData:
    can: Matrix
    canonical: CanonicalCoring
    B: Algebra
    inclusion: AlgebraMorphism
    morphism_report: CheckReport
    bijective: bool
    dims: tuple


def can_map(C: Coring, x: Sequence) -> GaloisData:
    """can(a (x)_B b) = a x b, with the coring-morphism conditions checked."""
    x = list(x)
    A, Cb = C.base, C.carrier
    B, incl, _ = coinvariant_subalgebra(C, x)
    D, _ = canonical_coring(incl)
    AB, BA = _base_bimodules(incl)
    can = induced_map(D.tensor, bilinear_matrix(AB, BA, C.dim,
                                                lambda p, q: Cb.act_left(A.basis(p), Cb.act_right(x, A.basis(q)))))
    rep = CheckReport("can is a coring morphism")
    if tensor_maps(D.CC, C.CC, can, can) @ D.comult != C.comult @ can:
        rep.add("can commutes with comultiplication", ())
    if C.counit @ can != D.counit:
        rep.add("can commutes with counit", ())
    Db = D.carrier
    for a in range(A.dim):
        for d in range(D.dim):
            if can @ Db.lact[a].column(d) != Cb.lact[a] @ can.column(d):
                rep.add("can left A-linear", (a, d))
            if can @ Db.ract[a].column(d) != Cb.ract[a] @ can.column(d):
                rep.add("can right A-linear", (d, a))
    return GaloisData(can, D, B, incl, rep, is_bijective(can), (D.dim, C.dim))


def is_galois(C: Coring, x: Sequence) -> bool:
    return can_map(C, x).bijective


@dataclass
class StarCan:
    morphism: AlgebraMorphism
    source: DualRing
    target: DualRing
    report: CheckReport
    bijective: bool


def star_can(C: Coring, x: Sequence, galois: GaloisData | None = None) -> StarCan:
    """*can : *C -> *D, f -> f o can."""
    g = galois if galois is not None else can_map(C, x)
    src = dual_ring(C, "left")
    tgt = dual_ring(g.canonical, "left")
    F, nA = C.field, C.base.dim
    cols = []
    for s in range(src.dim):
        f = hom_to_matrix(src.to_hom(src.algebra.basis(s)), C.dim, nA, F)
        coords = tgt.from_hom(matrix_to_hom(f @ g.can))
        if coords is None:
            raise ContractViolation("f o can is not left A-linear")
        cols.append(coords)
    mor = AlgebraMorphism(src.algebra, tgt.algebra, Matrix.from_columns(F, tgt.dim, cols))
    return StarCan(mor, src, tgt, check_morphism(mor), is_bijective(mor.matrix))


def end_identification(D: CanonicalCoring) -> tuple[Matrix, Subspace, bool]:
    """*D -> _BEnd(A)^op, f -> (a -> f(1 (x) a)); returns (matrix into End_k(A), target, anti-multiplicative & bijective)."""
    A, B, F = D.base, D.inclusion.source, D.field
    n = A.dim
    Dr = dual_ring(D, "left")
    # left B-linear endomorphisms as n*n vectors (column-major like Hom(A, A))
    eqs = []
    for b in range(B.dim):
        L = A.lmat(D.inclusion(B.basis(b)))
        for k in range(n):
            moved = L.column(k)
            for i in range(n):
                eq: dict = {}
                for j, v in enumerate(moved):
                    if v != 0:
                        eq[j * n + i] = eq.get(j * n + i, 0) + v
                for i2 in range(n):
                    if L.data[i][i2] != 0:
                        eq[k * n + i2] = eq.get(k * n + i2, 0) - L.data[i][i2]
                eqs.append(eq)
    End = solution_space(F, n * n, eqs)
    cols = []
    for s in range(Dr.dim):
        h = []
        for a in range(n):
            h.extend(Dr.evaluate(Dr.algebra.basis(s), D.tensor.pure(A.unit, A.basis(a))))
        cols.append(h)
    phi = Matrix.from_columns(F, n * n, cols)
    ok = all(End.contains(c) for c in cols) and rank(phi) == Dr.dim == End.dim
    if ok:
        for u in range(Dr.dim):
            for v in range(Dr.dim):
                lhs = phi @ Dr.algebra.mult[u][v]
                comp = hom_to_matrix(cols[v], n, n, F) @ hom_to_matrix(cols[u], n, n, F)
                if lhs != matrix_to_hom(comp):
                    ok = False
    return phi, End, ok


# ---------------------------------------------------------------- reflexivity

@dataclass
class ReflexivityReport:
    double_dual_dim: int
    coring_dim: int
    injective: bool
    lands_in_double_dual: bool

    @property
    def reflexive(self) -> bool:
        return self.injective and self.lands_in_double_dual and self.double_dual_dim == self.coring_dim


def reflexivity_check(C: Coring) -> ReflexivityReport:
    """i : C -> (*C)*, i(c)(f) = f(c), with (*C)* the right A-linear maps *C -> A."""
    D = dual_ring(C, "left")
    A, F = C.base, C.field
    nA, d = A.dim, D.dim
    # *C is a right A-module by (f.a)(c) = f(c)a, i.e. f -> f # i(a)
    R = D.algebra
    eqs = []
    for a in range(nA):
        ia = D.embedding(A.basis(a))
        for s in range(d):
            moved = R.mul(R.basis(s), ia)
            for i in range(nA):
                eq: dict = {}
                for j, v in enumerate(moved):
                    if v != 0:
                        eq[j * nA + i] = eq.get(j * nA + i, 0) + v
                for i2 in range(nA):
                    m = A.mult[i2][a][i]
                    if m != 0:
                        eq[s * nA + i2] = eq.get(s * nA + i2, 0) - m
                eqs.append(eq)
    DD = solution_space(F, d * nA, eqs)
    cols = []
    for k in range(C.dim):
        h = []
        for s in range(d):
            h.extend(D.evaluate(R.basis(s), C.carrier.basis(k)))
        cols.append(h)
    M = Matrix.from_columns(F, d * nA, cols)
    return ReflexivityReport(DD.dim, C.dim, is_injective(M), all(DD.contains(c) for c in cols))


# ---------------------------------------------------------------- structure theorems

@dataclass
class StructureReport:
    weak: dict = field(default_factory=dict)
    strong: dict = field(default_factory=dict)

    @property
    def weak_holds(self) -> bool:
        return all(self.weak.values())

    @property
    def strong_holds(self) -> bool:
        return self.weak_holds and all(self.strong.values())

    @property
    def witnesses(self) -> list:
        return sorted(self.weak) + sorted(self.strong)


def counit_map_bijective(M: RightComodule, x: Sequence, B: Algebra, incl: AlgebraMorphism) -> bool:
    """M^{coC} (x)_B A -> M, m (x) a -> ma."""
    A, F = M.coring.base, M.coring.field
    Mm = M.module
    V = coinvariants(M, x)
    vecs = V.basis_vectors()
    ract = []
    for b in range(B.dim):
        bb = incl(B.basis(b))
        cols = []
        for v in vecs:
            c = V.coordinates(Mm.act_right(v, bb))
            if c is None:
                return False
            cols.append(c)
        ract.append(Matrix.from_columns(F, V.dim, cols))
    MB = Bimodule(Algebra.ground(F), B, V.dim, None, ract, "M^coC")
    _, BA = _base_bimodules(incl)
    BA = Bimodule(B, Algebra.ground(F), A.dim, BA.lact, None, "_BA")
    T = tensor_over(MB, BA, B)
    eps = induced_map(T, bilinear_matrix(MB, BA, M.dim, lambda i, j: Mm.act_right(vecs[i], A.basis(j))))
    return is_bijective(eps)


def unit_map_bijective(C: Coring, x: Sequence, N: Bimodule, incl: AlgebraMorphism) -> bool:
    """N -> (N (x)_B A)^{coC}, n -> n (x) 1."""
    Mi = induced_comodule(C, x, N, incl)
    V = coinvariants(Mi, x)
    imgs = [Mi.tensor.pure(N.basis(n), C.base.unit) for n in range(N.dim)]
    if not all(V.contains(v) for v in imgs):
        return False
    return rank(Matrix.from_columns(C.field, Mi.dim, imgs)) == N.dim == V.dim


def structure_theorems(C: Coring, x: Sequence, comodules: Sequence[RightComodule] | None = None,
                       b_modules: Sequence[Bimodule] | None = None) -> StructureReport:
    """Weak/Strong Structure Theorem on an explicit witness set."""
    x = list(x)
    B, incl, _ = coinvariant_subalgebra(C, x)
    if comodules is None:
        comodules = default_witness_comodules(C, x, B, incl)
    if b_modules is None:
        b_modules = [right_regular(B, "B")]
    rep = StructureReport()
    for M in comodules:
        rep.weak[M.label] = counit_map_bijective(M, x, B, incl)
    for N in b_modules:
        rep.strong[N.label] = unit_map_bijective(C, x, N, incl)
    return rep


def default_witness_comodules(C: Coring, x: Sequence, B: Algebra, incl: AlgebraMorphism) -> list:
    return [grouplike_comodule(C, x), coring_comodule(C),
            induced_comodule(C, x, right_regular(B, "B"), incl, "B(x)_B A")]
