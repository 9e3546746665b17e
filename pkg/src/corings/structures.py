"""Finite-dimensional algebras, coalgebras, morphisms and bimodules.

Everything is presented by dense structure constants:

* ``Algebra.mult[i][j]`` is the coordinate vector of ``e_i e_j``;
* ``Coalgebra.comult[i]`` is the coordinate vector of ``Delta(e_i)`` in
  C (x) C, index ``j * dim + l`` for ``e_j (x) e_l``;
* ``Bimodule.lact[a]`` / ``ract[a]`` are the matrices of ``m -> e_a m`` and
  ``m -> m e_a``.

Hom(C, A) uses the basis ``c_j^* (x) a_i`` in lexicographic ``(j, i)`` order,
i.e. coordinate ``j * dim A + i`` holds the ``a_i`` component of ``f(c_j)``.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Sequence

from .exactla import (ContractViolation, Field, Matrix, Subspace, inverse, is_zero_vec,
                      kron_vec, lincomb, solve, unit_vec, zero_vec)


@dataclass(frozen=True)
class Violation:
    axiom: str
    witness: tuple
    detail: str = ""

    def to_dict(self) -> dict:
        return {"axiom": self.axiom, "witness": list(self.witness), "detail": self.detail}


class CheckReport:
    """List of violated axioms; empty means valid."""

    def __init__(self, subject: str = ""):
        self.subject = subject
        self.violations: list[Violation] = []

    def add(self, axiom: str, witness: tuple, detail: str = "") -> None:
        self.violations.append(Violation(axiom, tuple(witness), detail))

    def extend(self, other: "CheckReport", prefix: str = "") -> None:
        for v in other.violations:
            self.violations.append(Violation(prefix + v.axiom, v.witness, v.detail))

    @property
    def ok(self) -> bool:
        return not self.violations

    def axioms(self) -> set:
        return {v.axiom for v in self.violations}

    def __bool__(self):
        return self.ok

    def __repr__(self):
        if self.ok:
            return "CheckReport(%s: ok)" % self.subject
        return "CheckReport(%s: %s)" % (self.subject, ", ".join(sorted(self.axioms())))


def _tensor3(F: Field, n: int, data) -> list:
    return [[[F(data[i][j][l]) for l in range(n)] for j in range(n)] for i in range(n)]


class Algebra:
    """Associative unital algebra given by structure constants."""

    def __init__(self, field: Field, dim: int, mult, unit: Sequence, names: Sequence[str] | None = None):
        self.field = field
        self.dim = dim
        if len(mult) != dim or any(len(r) != dim or any(len(v) != dim for v in r) for r in mult):
            raise ContractViolation("multiplication tensor is not %d x %d x %d" % (dim, dim, dim))
        if len(unit) != dim:
            raise ContractViolation("unit vector has length %d, expected %d" % (len(unit), dim))
        self.mult = [[[field(a) for a in v] for v in r] for r in mult]
        self.unit = [field(a) for a in unit]
        self.names = list(names) if names else ["e%d" % i for i in range(dim)]

    @classmethod
    def from_table(cls, F: Field, dim: int, entries: dict, unit: Sequence, names=None) -> "Algebra":
        """Sparse constructor: ``entries[(i, j, l)] = c`` means e_i e_j has c at e_l."""
        mult = [[[F.zero] * dim for _ in range(dim)] for _ in range(dim)]
        for (i, j, l), c in entries.items():
            mult[i][j][l] = F(c)
        return cls(F, dim, mult, unit, names)

    @classmethod
    def ground(cls, F: Field) -> "Algebra":
        return cls(F, 1, [[[F.one]]], [F.one], ["1"])

    def basis(self, i: int) -> list:
        return unit_vec(self.field, self.dim, i)

    def mul(self, u: Sequence, v: Sequence) -> list:
        F, n = self.field, self.dim
        out = zero_vec(F, n)
        for i, a in enumerate(u):
            if a == 0:
                continue
            row = self.mult[i]
            for j, b in enumerate(v):
                if b == 0:
                    continue
                c = a * b
                for l, m in enumerate(row[j]):
                    if m != 0:
                        out[l] = out[l] + c * m
        return out

    def lmat(self, u: Sequence) -> Matrix:
        """Matrix of ``x -> u x``."""
        return Matrix.from_columns(self.field, self.dim, [self.mul(u, self.basis(j)) for j in range(self.dim)])

    def rmat(self, u: Sequence) -> Matrix:
        """Matrix of ``x -> x u``."""
        return Matrix.from_columns(self.field, self.dim, [self.mul(self.basis(j), u) for j in range(self.dim)])

    def element(self, **coeffs) -> list:
        v = zero_vec(self.field, self.dim)
        for name, c in coeffs.items():
            v[self.names.index(name)] = self.field(c)
        return v

    def fmt(self, v: Sequence) -> str:
        terms = ["%s*%s" % (a, self.names[i]) for i, a in enumerate(v) if a != 0]
        return " + ".join(terms) if terms else "0"

    def same_as(self, other: "Algebra") -> bool:
        return (isinstance(other, Algebra) and self.field == other.field and self.dim == other.dim
                and self.mult == other.mult and self.unit == other.unit)

    def __eq__(self, other):
        return self is other or (isinstance(other, Algebra) and self.same_as(other))

    def __hash__(self):
        return hash((self.dim, self.field))

    def __repr__(self):
        return "Algebra(dim=%d over %r)" % (self.dim, self.field)


class Coalgebra:
    """Coassociative counital coalgebra given by structure constants."""

    def __init__(self, field: Field, dim: int, comult, counit: Sequence, names: Sequence[str] | None = None):
        self.field = field
        self.dim = dim
        if len(comult) != dim or any(len(r) != dim or any(len(v) != dim for v in r) for r in comult):
            raise ContractViolation("comultiplication tensor is not %d x %d x %d" % (dim, dim, dim))
        if len(counit) != dim:
            raise ContractViolation("counit has length %d, expected %d" % (len(counit), dim))
        self.comult = [[[field(a) for a in v] for v in r] for r in comult]
        self.counit = [field(a) for a in counit]
        self.names = list(names) if names else ["c%d" % i for i in range(dim)]
        self._delta = [[a for r in self.comult[i] for a in r] for i in range(dim)]

    @classmethod
    def from_table(cls, F: Field, dim: int, entries: dict, counit: Sequence, names=None) -> "Coalgebra":
        comult = [[[F.zero] * dim for _ in range(dim)] for _ in range(dim)]
        for (i, j, l), c in entries.items():
            comult[i][j][l] = F(c)
        return cls(F, dim, comult, counit, names)

    @classmethod
    def ground(cls, F: Field) -> "Coalgebra":
        return cls(F, 1, [[[F.one]]], [F.one], ["1"])

    def basis(self, i: int) -> list:
        return unit_vec(self.field, self.dim, i)

    def delta(self, v: Sequence) -> list:
        """Delta(v) in C (x) C coordinates."""
        n = self.dim
        return lincomb(self.field, n * n, ((a, self._delta[i]) for i, a in enumerate(v)))

    def delta_terms(self, i: int):
        """Nonzero ``(c, j, l)`` with Delta(e_i) = sum c e_j (x) e_l."""
        n = self.dim
        return [(c, k // n, k % n) for k, c in enumerate(self._delta[i]) if c != 0]

    def delta2_terms(self, i: int):
        """Nonzero ``(c, j, k, l)`` for (Delta (x) I) Delta(e_i)."""
        out: dict = {}
        for c, j, l in self.delta_terms(i):
            for d, a, b in self.delta_terms(j):
                key = (a, b, l)
                out[key] = out.get(key, 0) + c * d
        return [(c, a, b, l) for (a, b, l), c in out.items() if c != 0]

    def eps(self, v: Sequence):
        s = self.field.zero
        for a, e in zip(v, self.counit):
            if a != 0 and e != 0:
                s = s + a * e
        return s

    def same_as(self, other: "Coalgebra") -> bool:
        return (isinstance(other, Coalgebra) and self.field == other.field and self.dim == other.dim
                and self.comult == other.comult and self.counit == other.counit)

    def __eq__(self, other):
        return self is other or (isinstance(other, Coalgebra) and self.same_as(other))

    def __hash__(self):
        return hash((self.dim, self.field, "co"))

    def __repr__(self):
        return "Coalgebra(dim=%d over %r)" % (self.dim, self.field)


@dataclass
class AlgebraMorphism:
    source: Algebra
    target: Algebra
    matrix: Matrix

    def __call__(self, v: Sequence) -> list:
        return self.matrix @ list(v)

    def is_injective(self) -> bool:
        from .exactla import rank
        return rank(self.matrix) == self.source.dim

    def is_bijective(self) -> bool:
        from .exactla import is_bijective
        return is_bijective(self.matrix)


def identity_morphism(A: Algebra) -> AlgebraMorphism:
    return AlgebraMorphism(A, A, Matrix.identity(A.field, A.dim))


class Bimodule:
    """An (L, R)-bimodule on F^dim, with action matrices per basis element.

    One-sided modules use ``Algebra.ground`` on the missing side.
    """

    def __init__(self, left: Algebra, right: Algebra, dim: int, lact: Sequence[Matrix] | None = None,
                 ract: Sequence[Matrix] | None = None, label: str = ""):
        F = left.field
        self.field = F
        self.left = left
        self.right = right
        self.dim = dim
        self.label = label
        if lact is None:
            if left.dim != 1:
                raise ContractViolation("left action required for a nontrivial left algebra")
            lact = [Matrix.identity(F, dim)]
        if ract is None:
            if right.dim != 1:
                raise ContractViolation("right action required for a nontrivial right algebra")
            ract = [Matrix.identity(F, dim)]
        if len(lact) != left.dim or len(ract) != right.dim:
            raise ContractViolation("one action matrix per algebra basis element is required")
        for M in list(lact) + list(ract):
            if M.shape != (dim, dim):
                raise ContractViolation("action matrix of shape %s on a %d-dimensional module" % (M.shape, dim))
        self.lact = list(lact)
        self.ract = list(ract)

    def left_matrix(self, a: Sequence) -> Matrix:
        F = self.field
        M = Matrix(F, self.dim, self.dim)
        for i, c in enumerate(a):
            if c != 0:
                M = M + self.lact[i].scale(c)
        return M

    def right_matrix(self, a: Sequence) -> Matrix:
        F = self.field
        M = Matrix(F, self.dim, self.dim)
        for i, c in enumerate(a):
            if c != 0:
                M = M + self.ract[i].scale(c)
        return M

    def act_left(self, a: Sequence, m: Sequence) -> list:
        return lincomb(self.field, self.dim, ((c, self.lact[i] @ list(m)) for i, c in enumerate(a)))

    def act_right(self, m: Sequence, a: Sequence) -> list:
        return lincomb(self.field, self.dim, ((c, self.ract[i] @ list(m)) for i, c in enumerate(a)))

    def basis(self, i: int) -> list:
        return unit_vec(self.field, self.dim, i)

    def __repr__(self):
        return "Bimodule(%s dim=%d)" % (self.label or "?", self.dim)


ModuleWitness = Bimodule


def regular_bimodule(A: Algebra, label: str = "") -> Bimodule:
    n = A.dim
    return Bimodule(A, A, n, [A.lmat(A.basis(i)) for i in range(n)], [A.rmat(A.basis(i)) for i in range(n)],
                    label or "regular")


def right_regular(A: Algebra, label: str = "") -> Bimodule:
    """A as a right A-module."""
    n = A.dim
    return Bimodule(Algebra.ground(A.field), A, n, None, [A.rmat(A.basis(i)) for i in range(n)],
                    label or "A_A")


def left_regular(A: Algebra, label: str = "") -> Bimodule:
    n = A.dim
    return Bimodule(A, Algebra.ground(A.field), n, [A.lmat(A.basis(i)) for i in range(n)], None,
                    label or "_AA")


def restrict(M: Bimodule, left: AlgebraMorphism | None = None, right: AlgebraMorphism | None = None,
             label: str = "") -> Bimodule:
    """Restriction of scalars along algebra maps into the acting algebras.

    Passing ``left=False``-like ``None`` keeps the side; use :func:`forget_left`
    to drop a side entirely.
    """
    lalg, lact = M.left, M.lact
    ralg, ract = M.right, M.ract
    if left is not None:
        lalg = left.source
        lact = [M.left_matrix(left(left.source.basis(i))) for i in range(lalg.dim)]
    if right is not None:
        ralg = right.source
        ract = [M.right_matrix(right(right.source.basis(i))) for i in range(ralg.dim)]
    return Bimodule(lalg, ralg, M.dim, lact, ract, label or M.label)


def forget_left(M: Bimodule, label: str = "") -> Bimodule:
    return Bimodule(Algebra.ground(M.field), M.right, M.dim, None, M.ract, label or M.label)


def forget_right(M: Bimodule, label: str = "") -> Bimodule:
    return Bimodule(M.left, Algebra.ground(M.field), M.dim, M.lact, None, label or M.label)


# ---------------------------------------------------------------- checkers

def check_algebra(A: Algebra) -> CheckReport:
    rep = CheckReport("algebra")
    n = A.dim
    basis = [A.basis(i) for i in range(n)]
    for i in range(n):
        if A.mul(A.unit, basis[i]) != basis[i]:
            rep.add("left unit", (i,))
        if A.mul(basis[i], A.unit) != basis[i]:
            rep.add("right unit", (i,))
    for i, j in itertools.product(range(n), repeat=2):
        ij = A.mult[i][j]
        for k in range(n):
            if A.mul(ij, basis[k]) != A.mul(basis[i], A.mult[j][k]):
                rep.add("associativity", (i, j, k))
    return rep


def check_coalgebra(C: Coalgebra) -> CheckReport:
    rep = CheckReport("coalgebra")
    n = C.dim
    F = C.field
    for i in range(n):
        left: dict = {}
        right: dict = {}
        for c, j, l in C.delta_terms(i):
            for d, a, b in C.delta_terms(j):
                left[(a, b, l)] = left.get((a, b, l), 0) + c * d
            for d, a, b in C.delta_terms(l):
                right[(j, a, b)] = right.get((j, a, b), 0) + c * d
        left = {k: v for k, v in left.items() if v != 0}
        right = {k: v for k, v in right.items() if v != 0}
        if left != right:
            rep.add("coassociativity", (i,))
        lc = zero_vec(F, n)
        rc = zero_vec(F, n)
        for c, j, l in C.delta_terms(i):
            lc[l] = lc[l] + c * C.counit[j]
            rc[j] = rc[j] + c * C.counit[l]
        if lc != C.basis(i):
            rep.add("left counit", (i,))
        if rc != C.basis(i):
            rep.add("right counit", (i,))
    return rep


def check_morphism(f: AlgebraMorphism) -> CheckReport:
    rep = CheckReport("morphism")
    S, T = f.source, f.target
    if f.matrix.shape != (T.dim, S.dim):
        raise ContractViolation("morphism matrix has shape %s, expected %s" % (f.matrix.shape, (T.dim, S.dim)))
    if f(S.unit) != T.unit:
        rep.add("unital", ())
    imgs = [f(S.basis(i)) for i in range(S.dim)]
    for i, j in itertools.product(range(S.dim), repeat=2):
        if f(S.mult[i][j]) != T.mul(imgs[i], imgs[j]):
            rep.add("multiplicative", (i, j))
    return rep


def check_bimodule(M: Bimodule) -> CheckReport:
    rep = CheckReport("bimodule")
    L, R = M.left, M.right
    n = M.dim
    I = Matrix.identity(M.field, n)
    if M.left_matrix(L.unit) != I:
        rep.add("left unital", ())
    if M.right_matrix(R.unit) != I:
        rep.add("right unital", ())
    for a, b in itertools.product(range(L.dim), repeat=2):
        if M.lact[a] @ M.lact[b] != M.left_matrix(L.mult[a][b]):
            rep.add("left associativity", (a, b))
    for a, b in itertools.product(range(R.dim), repeat=2):
        # (m a) b = m (a b)
        if M.ract[b] @ M.ract[a] != M.right_matrix(R.mult[a][b]):
            rep.add("right associativity", (a, b))
    for a in range(L.dim):
        for b in range(R.dim):
            if M.lact[a] @ M.ract[b] != M.ract[b] @ M.lact[a]:
                rep.add("actions commute", (a, b))
    return rep


@dataclass
class Bialgebra:
    algebra: Algebra
    coalgebra: Coalgebra

    @property
    def field(self) -> Field:
        return self.algebra.field

    @property
    def dim(self) -> int:
        return self.algebra.dim


def check_bialgebra(H: Bialgebra) -> CheckReport:
    A, C = H.algebra, H.coalgebra
    rep = CheckReport("bialgebra")
    if A.dim != C.dim:
        raise ContractViolation("algebra and coalgebra dimensions differ")
    rep.extend(check_algebra(A), "algebra: ")
    rep.extend(check_coalgebra(C), "coalgebra: ")
    n = A.dim
    AA = tensor_algebra(A, A)
    if C.delta(A.unit) != kron_vec(A.unit, A.unit):
        rep.add("Delta(1) = 1 (x) 1", ())
    if C.eps(A.unit) != 1:
        rep.add("eps(1) = 1", ())
    for i, j in itertools.product(range(n), repeat=2):
        lhs = C.delta(A.mult[i][j])
        rhs = AA.mul(C.delta(A.basis(i)), C.delta(A.basis(j)))
        if lhs != rhs:
            rep.add("Delta multiplicative", (i, j))
        if C.eps(A.mult[i][j]) != C.counit[i] * C.counit[j]:
            rep.add("eps multiplicative", (i, j))
    return rep


# ---------------------------------------------------------------- constructions

def tensor_algebra(A: Algebra, B: Algebra) -> Algebra:
    """A (x) B with componentwise product; index ``i * dim B + j``."""
    F = A.field
    n, m = A.dim, B.dim
    mult = []
    for i1, j1 in itertools.product(range(n), range(m)):
        row = []
        for i2, j2 in itertools.product(range(n), range(m)):
            row.append(kron_vec(A.mult[i1][i2], B.mult[j1][j2]))
        mult.append(row)
    names = ["%s(x)%s" % (a, b) for a in A.names for b in B.names]
    return Algebra(F, n * m, mult, kron_vec(A.unit, B.unit), names)


def opposite(A: Algebra) -> Algebra:
    n = A.dim
    mult = [[A.mult[j][i] for j in range(n)] for i in range(n)]
    return Algebra(A.field, n, mult, A.unit, A.names)


def opposite_morphism(f: AlgebraMorphism) -> AlgebraMorphism:
    return AlgebraMorphism(opposite(f.source), opposite(f.target), f.matrix)


def subalgebra(A: Algebra, S: Subspace) -> tuple[Algebra, AlgebraMorphism] | None:
    """Induced presentation on S (echelon basis) plus its inclusion, or None if S is not a subalgebra."""
    if S.ambient_dim != A.dim:
        raise ContractViolation("subspace is not in the algebra")
    if not S.contains(A.unit):
        return None
    basis = S.basis_vectors()
    d = len(basis)
    mult = []
    for u in basis:
        row = []
        for v in basis:
            c = S.coordinates(A.mul(u, v))
            if c is None:
                return None
            row.append(c)
        mult.append(row)
    names = [A.fmt(u) for u in basis]
    B = Algebra(A.field, d, mult, S.coordinates(A.unit), names)
    return B, AlgebraMorphism(B, A, S.inclusion())


def image_subalgebra(f: AlgebraMorphism) -> tuple[Algebra, AlgebraMorphism] | None:
    from .exactla import image
    return subalgebra(f.target, image(f.matrix))


def hom_index(nC: int, nA: int, j: int, i: int) -> int:
    return j * nA + i


def hom_to_matrix(f: Sequence, nC: int, nA: int, F: Field) -> Matrix:
    """Hom-vector -> matrix (nA x nC) of the linear map C -> A."""
    M = Matrix(F, nA, nC)
    for j in range(nC):
        for i in range(nA):
            M.data[i][j] = f[j * nA + i]
    return M


def matrix_to_hom(M: Matrix) -> list:
    nA, nC = M.rows, M.cols
    return [M.data[i][j] for j in range(nC) for i in range(nA)]


def hom_eval(f: Sequence, c: Sequence, nA: int) -> list:
    """Evaluate the Hom-vector f at c in C."""
    F_zero = f[0] * 0 if f else 0
    out = [F_zero] * nA
    for j, a in enumerate(c):
        if a == 0:
            continue
        base = j * nA
        for i in range(nA):
            b = f[base + i]
            if b != 0:
                out[i] = out[i] + a * b
    return out


def convolution_algebra(C: Coalgebra, A: Algebra) -> Algebra:
    """Hom(C, A) with (f * g)(c) = f(c_(1)) g(c_(2))."""
    if C.field != A.field:
        raise ContractViolation("coalgebra and algebra over different fields")
    F = A.field
    nC, nA = C.dim, A.dim
    N = nC * nA
    mult = [[zero_vec(F, N) for _ in range(N)] for _ in range(N)]
    for j1, i1, j2, i2 in itertools.product(range(nC), range(nA), range(nC), range(nA)):
        # f = c_j1^* a_i1, g = c_j2^* a_i2 ; (f*g)(c_k) = sum_{Delta c_k} <c_j1, c'> <c_j2, c''> a_i1 a_i2
        prod = A.mult[i1][i2]
        if is_zero_vec(prod):
            continue
        out = mult[j1 * nA + i1][j2 * nA + i2]
        for k in range(nC):
            coeff = C.comult[k][j1][j2]
            if coeff == 0:
                continue
            for l, a in enumerate(prod):
                if a != 0:
                    out[k * nA + l] = out[k * nA + l] + coeff * a
    unit = zero_vec(F, N)
    for k in range(nC):
        for i in range(nA):
            unit[k * nA + i] = C.counit[k] * A.unit[i]
    names = ["%s*.%s" % (c, a) for c in C.names for a in A.names]
    return Algebra(F, N, mult, unit, names)


def algebra_inverse(A: Algebra, u: Sequence) -> list | None:
    """Two-sided inverse of u, or None.

    A right inverse is found by a linear solve and then checked on the left;
    in finite dimension a one-sided inverse is automatically two-sided, and
    the check makes that explicit.
    """
    v = solve(A.lmat(u), A.unit)
    if v is None:
        return None
    if A.mul(v, u) != A.unit or A.mul(u, v) != A.unit:
        return None
    return v


def convolution_inverse(conv: Algebra, f: Sequence) -> list | None:
    return algebra_inverse(conv, f)


def is_algebra_map_to_ground(A: Algebra, chi: Sequence) -> bool:
    """chi : A -> k (a covector) is multiplicative and unital."""
    F = A.field

    def ev(v):
        return sum((a * b for a, b in zip(v, chi)), F.zero)

    if ev(A.unit) != 1:
        return False
    return all(ev(A.mult[i][j]) == chi[i] * chi[j] for i in range(A.dim) for j in range(A.dim))


def change_basis_algebra(A: Algebra, P: Matrix) -> Algebra:
    """Same algebra in the basis given by the columns of P (new -> old coordinates)."""
    Pinv = inverse(P)
    if Pinv is None:
        raise ContractViolation("change of basis matrix is singular")
    n = A.dim
    cols = P.columns()
    mult = [[Pinv @ A.mul(cols[i], cols[j]) for j in range(n)] for i in range(n)]
    return Algebra(A.field, n, mult, Pinv @ A.unit)


def change_basis_coalgebra(C: Coalgebra, P: Matrix) -> Coalgebra:
    Pinv = inverse(P)
    if Pinv is None:
        raise ContractViolation("change of basis matrix is singular")
    from .exactla import tensor_matrix
    PP = tensor_matrix(Pinv, Pinv)
    n = C.dim
    cols = P.columns()
    comult = []
    for i in range(n):
        d = PP @ C.delta(cols[i])
        comult.append([d[j * n:(j + 1) * n] for j in range(n)])
    counit = [C.eps(c) for c in cols]
    return Coalgebra(C.field, n, comult, counit)
