"""Entwining structures, their corings and smash algebras, and cleftness."""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Sequence

from .bimodtensor import tensor_over
from .coring import (Coring, DualRing, RightComodule, can_map, star_can, structure_theorems)
from .exactla import (ContractViolation, Matrix, Subspace, is_bijective, kron_vec, lincomb, solution_space,
                      unit_vec, zero_vec)
from .structures import (Algebra, AlgebraMorphism, Bimodule, CheckReport, Coalgebra, convolution_algebra,
                         convolution_inverse, hom_eval, subalgebra)


class ConsistencyError(AssertionError):
    """Two computations that theory says must agree did not."""


class Entwining:
    """(A, C, psi) with psi : C (x) A -> A (x) C.

    ``psi`` is a (nA*nC) x (nC*nA) matrix: source index c*nA + a, target a*nC + c.
    """

    def __init__(self, A: Algebra, C: Coalgebra, psi: Matrix, label: str = ""):
        if A.field != C.field:
            raise ContractViolation("algebra and coalgebra over different fields")
        if psi.shape != (A.dim * C.dim, C.dim * A.dim):
            raise ContractViolation("psi has shape %s" % (psi.shape,))
        self.A, self.C, self.psi, self.label = A, C, psi, label
        self._cols = psi.columns()

    @property
    def field(self):
        return self.A.field

    def terms(self, c: int, a: int):
        """psi(c_c (x) a_a) as a list of (coeff, a', c')."""
        nC = self.C.dim
        return [(v, k // nC, k % nC) for k, v in enumerate(self._cols[c * self.A.dim + a]) if v != 0]

    def apply(self, c: Sequence, a: Sequence) -> list:
        return self.psi @ kron_vec(c, a)


def _acc(out: dict, key, v):
    nv = out.get(key, 0) + v
    if nv == 0:
        out.pop(key, None)
    else:
        out[key] = nv


def check_entwining(e: Entwining) -> CheckReport:
    rep = CheckReport("entwining")
    A, C = e.A, e.C
    nA, nC = A.dim, C.dim
    unit_terms = [(i, u) for i, u in enumerate(A.unit) if u != 0]
    for c in range(nC):
        # psi(c (x) 1) = 1 (x) c
        out: dict = {}
        for i, u in unit_terms:
            for v, a2, c2 in e.terms(c, i):
                _acc(out, (a2, c2), u * v)
        exp = {(i, c): u for i, u in unit_terms}
        if out != exp:
            rep.add("psi(c(x)1) = 1(x)c", (c,))
        for a in range(nA):
            # eps(c^psi) a_psi = eps(c) a
            lhs = zero_vec(e.field, nA)
            for v, a2, c2 in e.terms(c, a):
                if C.counit[c2] != 0:
                    lhs[a2] = lhs[a2] + v * C.counit[c2]
            if lhs != [C.counit[c] * z for z in A.basis(a)]:
                rep.add("counit compatibility", (c, a))
            # a_psi (x) Delta(c^psi) = a_psiPsi (x) c_(1)^Psi (x) c_(2)^psi
            lhs3: dict = {}
            for v, a2, c2 in e.terms(c, a):
                for d, p, q in C.delta_terms(c2):
                    _acc(lhs3, (a2, p, q), v * d)
            rhs3: dict = {}
            for d, p, q in C.delta_terms(c):
                for v, a2, q2 in e.terms(q, a):
                    for w, a3, p2 in e.terms(p, a2):
                        _acc(rhs3, (a3, p2, q2), d * v * w)
            if lhs3 != rhs3:
                rep.add("comultiplication compatibility", (c, a))
            # (ab)_psi (x) c^psi = a_psi b_Psi (x) c^psiPsi
            for b in range(nA):
                lhs1: dict = {}
                for l, m in enumerate(A.mult[a][b]):
                    if m != 0:
                        for v, a2, c2 in e.terms(c, l):
                            _acc(lhs1, (a2, c2), m * v)
                rhs1: dict = {}
                for v, a2, c2 in e.terms(c, a):
                    for w, b2, c3 in e.terms(c2, b):
                        for l, m in enumerate(A.mult[a2][b2]):
                            if m != 0:
                                _acc(rhs1, (l, c3), v * w * m)
                if lhs1 != rhs1:
                    rep.add("multiplication compatibility", (c, a, b))
    return rep


# ---------------------------------------------------------------- entwined coring

def entwined_coring(e: Entwining) -> tuple[Coring, list]:
    """The A-coring A (x) C (index a*nC + c), plus the matrix of c -> 1 (x) c."""
    A, C, F = e.A, e.C, e.field
    nA, nC = A.dim, C.dim
    n = nA * nC
    lact = []
    for s in range(nA):
        M = Matrix(F, n, n)
        for b in range(nA):
            for c in range(nC):
                for l, v in enumerate(A.mult[s][b]):
                    if v != 0:
                        M.data[l * nC + c][b * nC + c] = M.data[l * nC + c][b * nC + c] + v
        lact.append(M)
    ract = []
    for s in range(nA):
        M = Matrix(F, n, n)
        for b in range(nA):
            for c in range(nC):
                for v, a2, c2 in e.terms(c, s):
                    for l, m in enumerate(A.mult[b][a2]):
                        if m != 0:
                            M.data[l * nC + c2][b * nC + c] = M.data[l * nC + c2][b * nC + c] + v * m
        ract.append(M)
    carrier = Bimodule(A, A, n, lact, ract, "A(x)C")
    CC = tensor_over(carrier, carrier, A)
    comult_cols = []
    for a in range(nA):
        for c in range(nC):
            acc = zero_vec(F, CC.dim)
            for d, p, q in C.delta_terms(c):
                left = zero_vec(F, n)
                right = zero_vec(F, n)
                left[a * nC + p] = F.one
                for i, u in enumerate(A.unit):
                    if u != 0:
                        right[i * nC + q] = u
                acc = lincomb(F, CC.dim, [(1, acc), (d, CC.pure(left, right))])
            comult_cols.append(acc)
    counit = Matrix(F, nA, n)
    for a in range(nA):
        for c in range(nC):
            counit.data[a][a * nC + c] = C.counit[c]
    cor = Coring(A, carrier, Matrix.from_columns(F, CC.dim, comult_cols), counit, CC, label="A(x)C")
    return cor, embed_coalgebra(e)


def embed_coalgebra(e: Entwining) -> Matrix:
    """c -> 1 (x) c, from C into A (x) C."""
    F = e.field
    nA, nC = e.A.dim, e.C.dim
    M = Matrix(F, nA * nC, nC)
    for c in range(nC):
        for i, u in enumerate(e.A.unit):
            if u != 0:
                M.data[i * nC + c][c] = u
    return M


class EntwinedModule:
    """Right A-module M with right C-coaction rho : M -> M (x) C (index m*nC + c)."""

    def __init__(self, e: Entwining, module: Bimodule, coaction: Matrix, label: str = ""):
        if coaction.shape != (module.dim * e.C.dim, module.dim):
            raise ContractViolation("coaction has shape %s" % (coaction.shape,))
        self.e, self.module, self.coaction, self.label = e, module, coaction, label

    @property
    def dim(self) -> int:
        return self.module.dim

    def terms(self, m: int):
        nC = self.e.C.dim
        return [(v, k // nC, k % nC) for k, v in enumerate(self.coaction.column(m)) if v != 0]


def check_entwined_module(M: EntwinedModule) -> CheckReport:
    rep = CheckReport("entwined module %s" % M.label)
    e, Mm = M.e, M.module
    A, C = e.A, e.C
    for m in range(M.dim):
        # counit and coassociativity of the coaction
        co: dict = {}
        for v, m2, c in M.terms(m):
            if C.counit[c] != 0:
                _acc(co, m2, v * C.counit[c])
        if co != {m: 1}:
            rep.add("coaction counit law", (m,))
        lhs: dict = {}
        rhs: dict = {}
        for v, m2, c in M.terms(m):
            for d, p, q in C.delta_terms(c):
                _acc(lhs, (m2, p, q), v * d)
            for w, m3, c3 in M.terms(m2):
                _acc(rhs, (m3, c3, c), v * w)
        if lhs != rhs:
            rep.add("coaction coassociativity", (m,))
        # rho(ma) = m_[0] a_psi (x) m_[1]^psi
        for a in range(A.dim):
            left: dict = {}
            for k, v in enumerate(M.coaction @ Mm.ract[a].column(m)):
                if v != 0:
                    _acc(left, (k // C.dim, k % C.dim), v)
            right: dict = {}
            for v, m2, c in M.terms(m):
                for w, a2, c2 in e.terms(c, a):
                    for k, u in enumerate(Mm.ract[a2].column(m2)):
                        if u != 0:
                            _acc(right, (k, c2), v * w * u)
            if left != right:
                rep.add("entwined compatibility", (m, a))
    return rep


def algebra_as_entwined_module(e: Entwining, x: Sequence) -> EntwinedModule:
    """A with rho(a) = a_psi (x) x^psi."""
    from .structures import right_regular
    A, F = e.A, e.field
    cols = [e.apply(x, A.basis(a)) for a in range(A.dim)]
    return EntwinedModule(e, right_regular(A, "A"), Matrix.from_columns(F, A.dim * e.C.dim, cols), "A")


def as_coring_comodule(M: EntwinedModule, cor: Coring) -> RightComodule:
    """The right (A (x) C)-comodule attached to an entwined module."""
    F, nA, nC = M.e.field, M.e.A.dim, M.e.C.dim
    MC = tensor_over(M.module, cor.carrier, cor.base)
    cols = []
    for m in range(M.dim):
        acc = zero_vec(F, MC.dim)
        for v, m2, c in M.terms(m):
            one_c = zero_vec(F, nA * nC)
            for i, u in enumerate(M.e.A.unit):
                if u != 0:
                    one_c[i * nC + c] = u
            acc = lincomb(F, MC.dim, [(1, acc), (v, MC.pure(M.module.basis(m2), one_c))])
        cols.append(acc)
    return RightComodule(cor, M.module, Matrix.from_columns(F, MC.dim, cols), MC, M.label)


# ---------------------------------------------------------------- smash algebras

def smash_hom(e: Entwining) -> Algebra:
    """#(C, A) on Hom(C, A) with (f#g)(c) = f(c_(2))_psi g(c_(1)^psi)."""
    A, C, F = e.A, e.C, e.field
    nA, nC = A.dim, C.dim
    N = nA * nC
    mult = [[zero_vec(F, N) for _ in range(N)] for _ in range(N)]
    for k in range(nC):
        for d, p, q in C.delta_terms(k):
            # f = c_q^* a_i1 (so f(c_(2)) = a_i1), then psi(c_p (x) a_i1)
            for i1 in range(nA):
                for v, a2, c2 in e.terms(p, i1):
                    # g = c_c2^* a_i2
                    for i2 in range(nA):
                        prod = A.mult[a2][i2]
                        out = mult[q * nA + i1][c2 * nA + i2]
                        for l, m in enumerate(prod):
                            if m != 0:
                                out[k * nA + l] = out[k * nA + l] + d * v * m
    unit = [C.counit[k] * A.unit[i] for k in range(nC) for i in range(nA)]
    return Algebra(F, N, mult, unit)


def smash_embedding(e: Entwining, R: Algebra | None = None) -> AlgebraMorphism:
    """i(a)(c) = eps(c) a."""
    A, C, F = e.A, e.C, e.field
    R = R if R is not None else smash_hom(e)
    cols = [[C.counit[k] * z for k in range(C.dim) for z in A.basis(a)] for a in range(A.dim)]
    return AlgebraMorphism(A, R, Matrix.from_columns(F, R.dim, cols))


def smash_to_dual_ring(e: Entwining, D: DualRing) -> AlgebraMorphism:
    """#(C, A) -> *(A (x) C), f -> (a (x) c -> a f(c))."""
    A, C, F = e.A, e.C, e.field
    nA, nC = A.dim, C.dim
    R = smash_hom(e)
    cols = []
    for s in range(R.dim):
        f = R.basis(s)
        h = []
        for a in range(nA):
            for c in range(nC):
                h.extend(A.mul(A.basis(a), hom_eval(f, unit_vec(F, nC, c), nA)))
        coords = D.from_hom(h)
        if coords is None:
            raise ConsistencyError("a (x) c -> a f(c) is not left A-linear")
        cols.append(coords)
    return AlgebraMorphism(R, D.algebra, Matrix.from_columns(F, D.dim, cols))


def smash_dual(e: Entwining) -> Algebra:
    """A # C* on A (x) C* (index i*nC + j): (a#c*)(b#d*) = a_R b # (d*_R * c*)."""
    A, C, F = e.A, e.C, e.field
    nA, nC = A.dim, C.dim
    N = nA * nC
    mult = [[zero_vec(F, N) for _ in range(N)] for _ in range(N)]
    for i in range(nA):
        for j2 in range(nC):
            # R(c_j2^* (x) a_i) = sum_l <c_j2^*, c_l^psi> a_psi (x) c_l^*
            twist: dict = {}
            for l in range(nC):
                for v, a2, c2 in e.terms(l, i):
                    if c2 == j2:
                        _acc(twist, (a2, l), v)
            for (a2, l), v in twist.items():
                for j in range(nC):
                    for k in range(nC):
                        d = C.comult[k][l][j]
                        if d == 0:
                            continue
                        for i2 in range(nA):
                            out = mult[i * nC + j][i2 * nC + j2]
                            for r, m in enumerate(A.mult[a2][i2]):
                                if m != 0:
                                    out[r * nC + k] = out[r * nC + k] + v * d * m
    unit = [A.unit[i] * C.counit[j] for i in range(nA) for j in range(nC)]
    return Algebra(F, N, mult, unit)


def smash_dual_iso(e: Entwining) -> AlgebraMorphism:
    """A # C* -> #(C, A), a (x) c_j^* -> (c_j -> a)."""
    nA, nC, F = e.A.dim, e.C.dim, e.field
    N = nA * nC
    M = Matrix(F, N, N)
    for i in range(nA):
        for j in range(nC):
            M.data[j * nA + i][i * nC + j] = F.one
    return AlgebraMorphism(smash_dual(e), smash_hom(e), M)


def smash_r_twist(e: Entwining) -> Matrix:
    """R : C* (x) A -> A (x) C*, source index j*nA + i, target i*nC + l."""
    nA, nC, F = e.A.dim, e.C.dim, e.field
    M = Matrix(F, nA * nC, nC * nA)
    for i in range(nA):
        for l in range(nC):
            for v, a2, c2 in e.terms(l, i):
                M.data[a2 * nC + l][c2 * nA + i] = M.data[a2 * nC + l][c2 * nA + i] + v
    return M


# ---------------------------------------------------------------- coinvariants and Q'

def coinvariants_entwined(e: Entwining, x: Sequence) -> Subspace:
    """B' = {b : b_psi (x) x^psi = b (x) x}."""
    A, F = e.A, e.field
    cols = [[u - w for u, w in zip(e.apply(x, A.basis(b)), kron_vec(A.basis(b), x))] for b in range(A.dim)]
    from .exactla import kernel
    return kernel(Matrix.from_columns(F, A.dim * e.C.dim, cols))


def q_prime_entwined(e: Entwining, x: Sequence) -> Subspace:
    """Q' = {q : q(c_(2))_psi (x) c_(1)^psi = q(c) (x) x} inside Hom(C, A)."""
    A, C, F = e.A, e.C, e.field
    nA, nC = A.dim, C.dim
    xs = [(j, v) for j, v in enumerate(x) if v != 0]
    eqs = []
    for k in range(nC):
        rows: dict = {}
        for d, p, q in C.delta_terms(k):
            for i in range(nA):
                for v, a2, c2 in e.terms(p, i):
                    rows.setdefault((a2, c2), {})
                    _acc(rows[(a2, c2)], q * nA + i, d * v)
        for i in range(nA):
            for j, v in xs:
                rows.setdefault((i, j), {})
                _acc(rows[(i, j)], k * nA + i, -v)
        eqs.extend(rows.values())
    return solution_space(F, nC * nA, eqs)


def entwining_chi(e: Entwining, x: Sequence):
    """The chi-structure (A, #(C,A), i, chi(f) = f(x))."""
    from .morita import ChiStructure
    R = smash_hom(e)
    i = smash_embedding(e, R)
    nA, F = e.A.dim, e.field
    chi = Matrix.from_columns(F, nA, [hom_eval(R.basis(s), x, nA) for s in range(R.dim)])
    return ChiStructure(e.A, R, i, chi)


# ---------------------------------------------------------------- cleftness

@dataclass
class CleftCheck:
    lam: list
    lam_inv: list | None
    conditions: tuple  # (in Q', colinear-product identity, lambda^-1 colinear); None when not invertible

    @property
    def invertible(self) -> bool:
        return self.lam_inv is not None

    @property
    def cleft(self) -> bool:
        return self.invertible and bool(self.conditions[0])


@dataclass
class CleftData:
    entwining: Entwining
    x: list
    lam: list
    lam_inv: list


def _conv_terms(f: Sequence, c: int, nA: int) -> list:
    return list(f[c * nA:(c + 1) * nA])


def is_cleft_candidate(e: Entwining, x: Sequence, lam: Sequence, Qp: Subspace | None = None,
                       conv: Algebra | None = None) -> tuple[CleftData | None, CleftCheck]:
    """Evaluate the three equivalent cleftness conditions for a convolution-invertible lambda."""
    A, C, F = e.A, e.C, e.field
    nA, nC = A.dim, C.dim
    x = list(x)
    lam = list(lam)
    conv = conv if conv is not None else convolution_algebra(C, A)
    inv = convolution_inverse(conv, lam)
    if inv is None:
        return None, CleftCheck(lam, None, (None, None, None))
    Qp = Qp if Qp is not None else q_prime_entwined(e, x)
    c1 = Qp.contains(lam)
    xs = [(j, v) for j, v in enumerate(x) if v != 0]
    c2 = True
    c3 = True
    for k in range(nC):
        # lam^-1(c_(1)) lam(c_(3))_psi (x) c_(2)^psi = eps(c) 1 (x) x
        lhs: dict = {}
        for d, p, q, r in C.delta2_terms(k):
            li = _conv_terms(inv, p, nA)
            for i, lv in enumerate(_conv_terms(lam, r, nA)):
                if lv == 0:
                    continue
                for v, a2, c2_ in e.terms(q, i):
                    for l, m in enumerate(A.mul(li, A.basis(a2))):
                        if m != 0:
                            _acc(lhs, (l, c2_), d * lv * v * m)
        rhs: dict = {}
        for i, u in enumerate(A.unit):
            for j, v in xs:
                if u != 0 and C.counit[k] != 0:
                    _acc(rhs, (i, j), C.counit[k] * u * v)
        if lhs != rhs:
            c2 = False
        # lam^-1(c_(1)) (x) c_(2) = lam^-1(c)_psi (x) x^psi
        lhs3: dict = {}
        for d, p, q in C.delta_terms(k):
            for i, v in enumerate(_conv_terms(inv, p, nA)):
                if v != 0:
                    _acc(lhs3, (i, q), d * v)
        rhs3: dict = {}
        for i, v in enumerate(_conv_terms(inv, k, nA)):
            if v == 0:
                continue
            for j, xv in xs:
                for w, a2, c2_ in e.terms(j, i):
                    _acc(rhs3, (a2, c2_), v * xv * w)
        if lhs3 != rhs3:
            c3 = False
    check = CleftCheck(lam, inv, (c1, c2, c3))
    if not (c1 == c2 == c3):
        raise ConsistencyError("cleftness conditions disagree: %r" % (check.conditions,))
    return (CleftData(e, x, lam, inv) if c1 else None), check


@dataclass
class CleftSearch:
    status: str  # "found" | "none" | "inconclusive"
    data: CleftData | None
    certificate: dict = field(default_factory=dict)
    attempts_used: int = 0
    seed: int = 0
    attempts: int = 0


def normal_basis_dimension_ok(e: Entwining, x: Sequence) -> bool:
    return coinvariants_entwined(e, x).dim * e.C.dim == e.A.dim


def find_cleft(e: Entwining, x: Sequence, attempts: int = 32, seed: int = 0, bound: int = 5) -> CleftSearch:
    """Seeded random search for an invertible element of Q'.

    A negative answer is only returned with a certificate: Q' = 0, a
    dimension obstruction to a normal basis, or failure of the Galois
    property.
    """
    x = list(x)
    Qp = q_prime_entwined(e, x)
    out = CleftSearch("inconclusive", None, seed=seed, attempts=attempts)
    if Qp.dim == 0:
        out.status = "none"
        out.certificate = {"reason": "Q' is zero"}
        return out
    cor, emb = entwined_coring(e)
    g = can_map(cor, emb @ x)
    Bd = coinvariants_entwined(e, x).dim
    dims = {"dim_D": g.dims[0], "dim_coring": g.dims[1], "dim_B": Bd, "dim_C": e.C.dim, "dim_A": e.A.dim}
    if not g.bijective:
        out.status = "none"
        out.certificate = dict(reason="not Galois", **dims)
        return out
    if Bd * e.C.dim != e.A.dim:
        out.status = "none"
        out.certificate = dict(reason="no normal basis: dim B' * dim C != dim A", **dims)
        return out
    conv = convolution_algebra(e.C, e.A)
    rng = random.Random(seed)
    basis = Qp.basis_vectors()
    F = e.field
    for t in range(1, attempts + 1):
        coeffs = [F(rng.randint(-bound, bound)) for _ in basis]
        lam = lincomb(F, Qp.ambient_dim, zip(coeffs, basis))
        data, _ = is_cleft_candidate(e, x, lam, Qp, conv)
        if data is not None:
            out.status = "found"
            out.data = data
            out.attempts_used = t
            return out
    out.attempts_used = attempts
    return out


def lambda_to_Lambda(cd: CleftData) -> list:
    """Lambda = lambda # i(lambda^-1(x)), an element of Q' with Lambda(x) = 1."""
    e = cd.entwining
    R = smash_hom(e)
    i = smash_embedding(e, R)
    b = hom_eval(cd.lam_inv, cd.x, e.A.dim)
    Lam = R.mul(cd.lam, i(b))
    if not q_prime_entwined(e, cd.x).contains(Lam):
        raise ConsistencyError("Lambda is not in Q'")
    if hom_eval(Lam, cd.x, e.A.dim) != e.A.unit:
        raise ConsistencyError("Lambda(x) != 1")
    return Lam


@dataclass
class NormalBasis:
    h: Matrix          # B' (x) C -> A, index s*nC + c
    h_inv: Matrix
    B: Algebra
    inclusion: AlgebraMorphism
    left_linear: bool
    colinear: bool
    bijective: bool
    inverse_formula_ok: bool

    @property
    def ok(self) -> bool:
        return self.left_linear and self.colinear and self.bijective and self.inverse_formula_ok


def _b_prime(e: Entwining, x: Sequence):
    Bs = coinvariants_entwined(e, x)
    res = subalgebra(e.A, Bs)
    if res is None:
        raise ConsistencyError("B' is not a subalgebra")
    return res


def _nb_checks(e: Entwining, x: Sequence, h: Matrix, B: Algebra, incl: AlgebraMorphism) -> tuple[bool, bool]:
    A, C, F = e.A, e.C, e.field
    nC = C.dim
    left = True
    for b in range(B.dim):
        bb = incl(B.basis(b))
        for s in range(B.dim):
            prod = B.mult[b][s]
            for c in range(nC):
                lhs = h @ kron_vec(prod, unit_vec(F, nC, c))
                rhs = A.mul(bb, h.column(s * nC + c))
                if lhs != rhs:
                    left = False
    rhoA = algebra_as_entwined_module(e, x).coaction
    colin = True
    for s in range(B.dim):
        for c in range(nC):
            lhs = rhoA @ h.column(s * nC + c)
            rhs = zero_vec(F, A.dim * nC)
            for d, p, q in C.delta_terms(c):
                rhs = lincomb(F, len(rhs), [(1, rhs), (d, kron_vec(h.column(s * nC + p), unit_vec(F, nC, q)))])
            if lhs != rhs:
                colin = False
    return left, colin


def normal_basis(cd: CleftData) -> NormalBasis:
    """h(b (x) c) = b lambda^-1(c) and its inverse a -> a_[0] lambda(a_[1]) (x) a_[2]."""
    e, x = cd.entwining, cd.x
    A, C, F = e.A, e.C, e.field
    nA, nC = A.dim, C.dim
    B, incl = _b_prime(e, x)
    cols = []
    for s in range(B.dim):
        bb = incl(B.basis(s))
        for c in range(nC):
            cols.append(A.mul(bb, _conv_terms(cd.lam_inv, c, nA)))
    h = Matrix.from_columns(F, nA, cols)
    left, colin = _nb_checks(e, x, h, B, incl)
    bij = is_bijective(h)
    # k(a) = a_[0] lambda(a_[1]) (x) a_[2]
    M = algebra_as_entwined_module(e, x)
    kcols = []
    Bs = incl.matrix
    formula_ok = True
    for a in range(nA):
        acc: dict = {}
        for v, a2, c in M.terms(a):
            for d, p, q in C.delta_terms(c):
                val = A.mul(A.basis(a2), _conv_terms(cd.lam, p, nA))
                for l, w in enumerate(val):
                    if w != 0:
                        _acc(acc, (l, q), v * d * w)
        # express first factors in B' coordinates
        vec = zero_vec(F, B.dim * nC)
        for q in range(nC):
            first = [acc.get((l, q), F.zero) for l in range(nA)]
            from .exactla import solve
            coords = solve(Bs, first)
            if coords is None:
                formula_ok = False
                coords = zero_vec(F, B.dim)
            for s, w in enumerate(coords):
                vec[s * nC + q] = w
        kcols.append(vec)
    k = Matrix.from_columns(F, B.dim * nC, kcols)
    if bij:
        formula_ok = formula_ok and (h @ k == Matrix.identity(F, nA)) and (k @ h == Matrix.identity(F, B.dim * nC))
    else:
        formula_ok = False
    return NormalBasis(h, k, B, incl, left, colin, bij, formula_ok)


@dataclass
class NormalBasisSearch:
    status: str  # "found" | "none" | "inconclusive"
    space_dim: int
    h: Matrix | None = None
    reason: str = ""


def normal_basis_search(e: Entwining, x: Sequence, attempts: int = 32, seed: int = 0, bound: int = 5) -> NormalBasisSearch:
    """Search the space of left B'-linear right C-colinear maps B' (x) C -> A for a bijection."""
    A, C, F = e.A, e.C, e.field
    nA, nC = A.dim, C.dim
    x = list(x)
    B, incl = _b_prime(e, x)
    n_src = B.dim * nC
    if n_src != nA:
        return NormalBasisSearch("none", 0, None, "dim B' * dim C != dim A")
    # unknown matrix entries H[r][col] at index col*nA + r
    nv = n_src * nA
    eqs = []
    for b in range(B.dim):
        L = A.lmat(incl(B.basis(b)))
        for s in range(B.dim):
            prod = B.mult[b][s]
            for c in range(nC):
                for r in range(nA):
                    eq: dict = {}
                    for s2, w in enumerate(prod):
                        if w != 0:
                            _acc(eq, (s2 * nC + c) * nA + r, w)
                    for r2 in range(nA):
                        if L.data[r][r2] != 0:
                            _acc(eq, (s * nC + c) * nA + r2, -L.data[r][r2])
                    eqs.append(eq)
    rho = algebra_as_entwined_module(e, x).coaction
    for s in range(B.dim):
        for c in range(nC):
            col = s * nC + c
            # rho(H e_col) = sum_{Delta c} H(e_{s,p}) (x) c_q
            for out in range(nA * nC):
                eq: dict = {}
                for r in range(nA):
                    if rho.data[out][r] != 0:
                        _acc(eq, col * nA + r, rho.data[out][r])
                r_out, q_out = divmod(out, nC)
                for d, p, q in C.delta_terms(c):
                    if q == q_out:
                        _acc(eq, (s * nC + p) * nA + r_out, -d)
                eqs.append(eq)
    space = solution_space(F, nv, eqs)
    if space.dim == 0:
        return NormalBasisSearch("none", 0, None, "no nonzero B'-linear colinear maps")
    rng = random.Random(seed)
    basis = space.basis_vectors()
    for _ in range(attempts):
        v = lincomb(F, nv, ((F(rng.randint(-bound, bound)), b) for b in basis))
        H = Matrix(F, nA, n_src)
        for col in range(n_src):
            for r in range(nA):
                H.data[r][col] = v[col * nA + r]
        if is_bijective(H):
            return NormalBasisSearch("found", space.dim, H)
    return NormalBasisSearch("inconclusive", space.dim, None, "no bijection sampled")


@dataclass
class Thm33Report:
    conditions: tuple          # four entries, True/False/None
    cleft: CleftSearch
    normal_basis: str          # "found" | "none" | "inconclusive"
    strong: bool
    galois: bool
    star_can: bool
    witnesses: list
    seed: int
    attempts: int
    details: dict = field(default_factory=dict)

    @property
    def agree(self) -> bool:
        vals = [c for c in self.conditions if c is not None]
        return len(set(vals)) <= 1

    @property
    def verdict(self) -> str:
        if any(c is None for c in self.conditions):
            return "inconclusive"
        return "cleft" if all(self.conditions) else "not cleft"


def thm33_report(e: Entwining, x: Sequence, attempts: int = 32, seed: int = 0, lam: Sequence | None = None) -> Thm33Report:
    """Evaluate the four equivalent conditions independently."""
    x = list(x)
    if lam is not None:
        data, _ = is_cleft_candidate(e, x, lam)
        search = CleftSearch("found" if data else "inconclusive", data, seed=seed, attempts=attempts,
                             attempts_used=0, certificate={"supplied": True})
        if data is None:
            search = find_cleft(e, x, attempts, seed)
    else:
        search = find_cleft(e, x, attempts, seed)
    cleft = {"found": True, "none": False}.get(search.status)
    if search.data is not None:
        nb_obj = normal_basis(search.data)
        nb = "found" if nb_obj.ok else "none"
        if not nb_obj.ok:
            raise ConsistencyError("cleft data does not give a normal basis")
    else:
        nb = normal_basis_search(e, x, attempts, seed).status
    nbv = {"found": True, "none": False}.get(nb)
    cor, emb = entwined_coring(e)
    xx = emb @ x
    st = structure_theorems(cor, xx)
    g = can_map(cor, xx)
    sc = star_can(cor, xx, g)

    def both(p):
        if nbv is None:
            return None if p else False
        return p and nbv

    conds = (cleft, both(st.strong_holds), both(g.bijective), both(sc.bijective))
    rep = Thm33Report(conds, search, nb, st.strong_holds, g.bijective, sc.bijective, st.witnesses, seed, attempts,
                      {"dim_D": g.dims[0], "dim_coring": g.dims[1], "weak": dict(st.weak), "strong_units": dict(st.strong)})
    if not rep.agree:
        raise ConsistencyError("cleftness characterizations disagree: %r" % (conds,))
    return rep
