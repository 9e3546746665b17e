"""Balanced tensor products M (x)_A N as explicit quotients of M (x)_k N."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .exactla import (ContractViolation, Echelon, Matrix, QuotientPresentation, Subspace, kron_vec,
                      lincomb, unit_vec, zero_vec)
from .structures import Algebra, Bimodule


class BalancednessViolation(ValueError):
    def __init__(self, witness: tuple, msg: str = ""):
        self.witness = witness
        super().__init__(msg or "map is not balanced at basis triple %r" % (witness,))


class BalancedTensor:
    """M (x)_A N for a right A-module M and a left A-module N.

    The quotient inherits the left action of M's left algebra and the right
    action of N's right algebra, available as :attr:`bimodule`.
    """

    def __init__(self, left: Bimodule, right: Bimodule, over: Algebra, presentation: QuotientPresentation):
        self.left = left
        self.right = right
        self.over = over
        self.presentation = presentation
        self._bimodule = None

    @property
    def field(self):
        return self.left.field

    @property
    def dim(self) -> int:
        return self.presentation.quotient_dim

    @property
    def ambient_dim(self) -> int:
        return self.presentation.ambient_dim

    def pure(self, m: Sequence, n: Sequence) -> list:
        """Class of m (x) n."""
        return self.presentation.project_vec(kron_vec(m, n))

    def pure_basis(self, i: int, j: int) -> list:
        return self.presentation.project_sparse({i * self.right.dim + j: self.field.one})

    def project(self, v: Sequence) -> list:
        return self.presentation.project_vec(v)

    def lift(self, w: Sequence) -> list:
        return self.presentation.section_vec(w)

    def lift_terms(self, w: Sequence):
        """Pure-tensor basis terms ``(c, i, j)`` of the canonical representative of w."""
        nN = self.right.dim
        return [(a, c // nN, c % nN) for c, a in zip(self.presentation.free_columns, w) if a != 0]

    @property
    def bimodule(self) -> Bimodule:
        if self._bimodule is None:
            M, N = self.left, self.right
            lact = [self._induced_square(M.lact[a], None) for a in range(M.left.dim)]
            ract = [self._induced_square(None, N.ract[b]) for b in range(N.right.dim)]
            self._bimodule = Bimodule(M.left, N.right, self.dim, lact, ract,
                                      "(%s)(x)(%s)" % (M.label, N.label))
        return self._bimodule

    def _induced_square(self, f: Matrix | None, g: Matrix | None) -> Matrix:
        cols = []
        F = self.field
        for w in range(self.dim):
            acc = zero_vec(F, self.dim)
            for c, i, j in self.lift_terms(unit_vec(F, self.dim, w)):
                m = f.column(i) if f is not None else unit_vec(F, self.left.dim, i)
                n = g.column(j) if g is not None else unit_vec(F, self.right.dim, j)
                acc = lincomb(F, self.dim, [(1, acc), (c, self.pure(m, n))])
            cols.append(acc)
        return Matrix.from_columns(F, self.dim, cols)

    def __repr__(self):
        return "BalancedTensor(%d x %d -> %d)" % (self.left.dim, self.right.dim, self.dim)


def balancing_relations(M: Bimodule, N: Bimodule, A: Algebra, generators: Sequence[Sequence] | None = None) -> Subspace:
    """span{(m a) (x) n - m (x) (a n)} over basis m, n and basis (or given generators) a."""
    F = M.field
    nM, nN = M.dim, N.dim
    E = Echelon(F, nM * nN)
    acts = []
    if generators is None:
        acts = [(M.ract[a], N.lact[a]) for a in range(A.dim)]
    else:
        acts = [(M.right_matrix(g), N.left_matrix(g)) for g in generators]
    for Ra, La in acts:
        Rcols = Ra.columns()
        Lcols = La.columns()
        for m in range(nM):
            ma = Rcols[m]
            for n in range(nN):
                an = Lcols[n]
                v: dict = {}
                for i, x in enumerate(ma):
                    if x != 0:
                        k = i * nN + n
                        v[k] = v.get(k, 0) + x
                base = m * nN
                for j, y in enumerate(an):
                    if y != 0:
                        k = base + j
                        v[k] = v.get(k, 0) - y
                v = {k: c for k, c in v.items() if c != 0}
                if v:
                    E.add(v)
    return Subspace(F, nM * nN, E)


def tensor_over(M: Bimodule, N: Bimodule, A: Algebra | None = None) -> BalancedTensor:
    if A is None:
        A = M.right
    if not (M.right == A and N.left == A):
        raise ContractViolation("M must be a right %r-module and N a left one" % (A,))
    rel = balancing_relations(M, N, A)
    return BalancedTensor(M, N, A, QuotientPresentation(M.field, M.dim * N.dim, rel))


def check_balanced(bt: BalancedTensor, f: Matrix) -> tuple | None:
    """Witness (m, a, n) where f((m a) (x) n) != f(m (x) (a n)), or None."""
    M, N, A = bt.left, bt.right, bt.over
    nN = N.dim
    F = M.field
    for a in range(A.dim):
        Rcols = M.ract[a].columns()
        Lcols = N.lact[a].columns()
        for m in range(M.dim):
            for n in range(nN):
                lhs = f @ kron_vec(Rcols[m], unit_vec(F, nN, n))
                rhs = f @ kron_vec(unit_vec(F, M.dim, m), Lcols[n])
                if lhs != rhs:
                    return (m, a, n)
    return None


def induced_map(bt: BalancedTensor, f: Matrix) -> Matrix:
    """Linear map on M (x)_A N induced by f : M (x)_k N -> V (given on the ambient tensor)."""
    if f.cols != bt.ambient_dim:
        raise ContractViolation("bilinear map has %d columns, tensor has %d" % (f.cols, bt.ambient_dim))
    w = check_balanced(bt, f)
    if w is not None:
        raise BalancednessViolation(w)
    return f @ bt.presentation.section


def bilinear_matrix(M: Bimodule, N: Bimodule, V_dim: int, fn) -> Matrix:
    """Ambient matrix of the bilinear map with ``fn(i, j)`` = value on basis pair."""
    F = M.field
    cols = [fn(i, j) for i in range(M.dim) for j in range(N.dim)]
    return Matrix.from_columns(F, V_dim, cols)


def tensor_maps(src: BalancedTensor, dst: BalancedTensor, f: Matrix, g: Matrix) -> Matrix:
    """f (x)_A g : src -> dst for f right A-linear and g left A-linear."""
    F = src.field
    cols = []
    fc = f.columns()
    gc = g.columns()
    for w in range(src.dim):
        acc = zero_vec(F, dst.dim)
        for c, i, j in src.lift_terms(unit_vec(F, src.dim, w)):
            acc = lincomb(F, dst.dim, [(1, acc), (c, dst.pure(fc[i], gc[j]))])
        cols.append(acc)
    return Matrix.from_columns(F, dst.dim, cols)


@dataclass
class UnitIso:
    forward: Matrix   # tensor -> M
    backward: Matrix  # M -> tensor
    tensor: BalancedTensor
    verified: bool


def unit_iso(M: Bimodule, A: Algebra | None = None) -> UnitIso:
    """M (x)_A A ~= M via m (x) a -> m a, inverse m -> m (x) 1."""
    from .structures import regular_bimodule
    if A is None:
        A = M.right
    AA = regular_bimodule(A)
    bt = tensor_over(M, AA, A)
    F = M.field
    f = bilinear_matrix(M, AA, M.dim, lambda i, j: M.ract[j].column(i))
    fwd = induced_map(bt, f)
    back = Matrix.from_columns(F, bt.dim, [bt.pure(unit_vec(F, M.dim, i), A.unit) for i in range(M.dim)])
    ok = fwd @ back == Matrix.identity(F, M.dim) and back @ fwd == Matrix.identity(F, bt.dim)
    return UnitIso(fwd, back, bt, ok)


def left_unit_iso(M: Bimodule, A: Algebra | None = None) -> UnitIso:
    """A (x)_A M ~= M via a (x) m -> a m, inverse m -> 1 (x) m."""
    from .structures import regular_bimodule
    if A is None:
        A = M.left
    AA = regular_bimodule(A)
    bt = tensor_over(AA, M, A)
    F = M.field
    f = bilinear_matrix(AA, M, M.dim, lambda i, j: M.lact[i].column(j))
    fwd = induced_map(bt, f)
    back = Matrix.from_columns(F, bt.dim, [bt.pure(A.unit, unit_vec(F, M.dim, i)) for i in range(M.dim)])
    ok = fwd @ back == Matrix.identity(F, M.dim) and back @ fwd == Matrix.identity(F, bt.dim)
    return UnitIso(fwd, back, bt, ok)


class TripleTensor:
    """(M (x)_A N) (x)_A P with access from both bracketings."""

    def __init__(self, M: Bimodule, N: Bimodule, P: Bimodule, A: Algebra,
                 MN: BalancedTensor | None = None, NP: BalancedTensor | None = None):
        self.MN = MN if MN is not None else tensor_over(M, N, A)
        self.NP = NP if NP is not None else tensor_over(N, P, A)
        self.outer = tensor_over(self.MN.bimodule, P, A)
        self.field = M.field

    @property
    def dim(self) -> int:
        return self.outer.dim

    def from_left(self, x: Sequence, p: Sequence) -> list:
        """Class of x (x) p for x in M (x)_A N."""
        return self.outer.pure(x, p)

    def from_right(self, m: Sequence, y: Sequence) -> list:
        """Class of m (x) y for y in N (x)_A P (well defined on classes)."""
        F = self.field
        acc = zero_vec(F, self.dim)
        nP = self.NP.right.dim
        nN = self.NP.left.dim
        for c, j, l in self.NP.lift_terms(y):
            mn = self.MN.pure(m, unit_vec(F, nN, j))
            acc = lincomb(F, self.dim, [(1, acc), (c, self.outer.pure(mn, unit_vec(F, nP, l)))])
        return acc
