"""Standard small instances: group algebras, Sweedler's H4, Q(i), entwinings and actions."""
from __future__ import annotations

import itertools

from .exactla import QQ, Field, Matrix
from .structures import Algebra, AlgebraMorphism, Bialgebra, Coalgebra


def ground(F: Field = QQ) -> Algebra:
    return Algebra.ground(F)


def group_algebra_c2(F: Field = QQ, names=("1", "g")) -> Algebra:
    """k[C_2] with basis {1, g}, g^2 = 1."""
    return Algebra.from_table(F, 2, {(0, 0, 0): 1, (0, 1, 1): 1, (1, 0, 1): 1, (1, 1, 0): 1}, [1, 0], names)


def group_coalgebra_c2(F: Field = QQ, names=("1", "g")) -> Coalgebra:
    """k[C_2] as a coalgebra on the grouplike basis {1, g}."""
    return Coalgebra.from_table(F, 2, {(0, 0, 0): 1, (1, 1, 1): 1}, [1, 1], names)


def kc2_hopf(F: Field = QQ) -> Bialgebra:
    return Bialgebra(group_algebra_c2(F), group_coalgebra_c2(F))


H4_NAMES = ("1", "g", "x", "gx")


def _h4_index(a: int, b: int) -> int:
    return {(0, 0): 0, (1, 0): 1, (0, 1): 2, (1, 1): 3}[(a, b)]


def sweedler_algebra(F: Field = QQ) -> Algebra:
    """H4: g^2 = 1, x^2 = 0, gx = -xg, basis g^a x^b."""
    entries = {}
    for a, b, c, d in itertools.product((0, 1), repeat=4):
        if b + d >= 2:
            continue
        sign = -1 if (b * c) % 2 else 1
        entries[(_h4_index(a, b), _h4_index(c, d), _h4_index((a + c) % 2, b + d))] = sign
    return Algebra.from_table(F, 4, entries, [1, 0, 0, 0], H4_NAMES)


def sweedler_coalgebra(F: Field = QQ) -> Coalgebra:
    """Delta g = g(x)g, Delta x = x(x)1 + g(x)x, Delta gx = gx(x)g + 1(x)gx."""
    entries = {
        (0, 0, 0): 1,
        (1, 1, 1): 1,
        (2, 2, 0): 1, (2, 1, 2): 1,
        (3, 3, 1): 1, (3, 0, 3): 1,
    }
    return Coalgebra.from_table(F, 4, entries, [1, 1, 0, 0], H4_NAMES)


def sweedler_hopf(F: Field = QQ) -> Bialgebra:
    return Bialgebra(sweedler_algebra(F), sweedler_coalgebra(F))


def sweedler_antipode(F: Field = QQ) -> Matrix:
    """S(1)=1, S(g)=g, S(x)=-gx, S(gx)=x (columns are images)."""
    return Matrix.from_columns(F, 4, [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, -1], [0, 0, 1, 0]])


def gaussian_rationals(F: Field = QQ) -> Algebra:
    """Q(i) with basis {1, i}; over F_p this is F_p[i]/(i^2 + 1)."""
    return Algebra.from_table(F, 2, {(0, 0, 0): 1, (0, 1, 1): 1, (1, 0, 1): 1, (1, 1, 0): -1}, [1, 0], ("1", "i"))


def unit_morphism(A: Algebra) -> AlgebraMorphism:
    """k -> A."""
    k = Algebra.ground(A.field)
    return AlgebraMorphism(k, A, Matrix.from_columns(A.field, A.dim, [A.unit]))


def kc2_into_h4(F: Field = QQ) -> AlgebraMorphism:
    return AlgebraMorphism(group_algebra_c2(F), sweedler_algebra(F),
                           Matrix.from_columns(F, 4, [[1, 0, 0, 0], [0, 1, 0, 0]]))


# ---------------------------------------------------------------- entwinings

def flip_psi(C: Coalgebra, A: Algebra) -> Matrix:
    """psi(c (x) a) = a (x) c; source index c*nA+a, target a*nC+c."""
    F = A.field
    nC, nA = C.dim, A.dim
    M = Matrix(F, nA * nC, nC * nA)
    for c in range(nC):
        for a in range(nA):
            M.data[a * nC + c][c * nA + a] = F.one
    return M


def comodule_algebra_psi(H: Bialgebra) -> Matrix:
    """psi(h (x) a) = a_(1) (x) h a_(2) for A = C = H."""
    A, C = H.algebra, H.coalgebra
    F = A.field
    n = A.dim
    M = Matrix(F, n * n, n * n)
    for h in range(n):
        for a in range(n):
            col = h * n + a
            for c, a1, a2 in C.delta_terms(a):
                prod = A.mult[h][a2]
                for l, v in enumerate(prod):
                    if v != 0:
                        M.data[a1 * n + l][col] = M.data[a1 * n + l][col] + c * v
    return M


def e1_data():
    """A = C = k, flip, x = 1."""
    A = Algebra.ground(QQ)
    C = Coalgebra.ground(QQ)
    return A, C, flip_psi(C, A), 0


def e5_data():
    """A = Q, C = kC2 (grouplike basis), flip, x = 1."""
    A = Algebra.ground(QQ)
    C = group_coalgebra_c2(QQ)
    return A, C, flip_psi(C, A), 0


def e6_data():
    """A = C = H4, psi(h (x) a) = a_(1) (x) h a_(2), x = 1."""
    H = sweedler_hopf(QQ)
    return H.algebra, H.coalgebra, comodule_algebra_psi(H), 0


# ---------------------------------------------------------------- module algebras

def sign_action(F: Field = QQ):
    """kC2 acting on A = kC2 = span{1, u} by g.u = -u.

    Returns (H, A, action) with action[h] the matrix of a -> h.a.
    """
    H = kc2_hopf(F)
    A = group_algebra_c2(F, names=("1", "u"))
    act = [Matrix.identity(F, 2), Matrix.from_columns(F, 2, [[1, 0], [0, -1]])]
    return H, A, act


def trivial_action(H: Bialgebra, A: Algebra):
    """h.a = eps(h) a."""
    F = A.field
    act = [Matrix.identity(F, A.dim).scale(H.coalgebra.counit[h]) for h in range(H.dim)]
    return H, A, act
