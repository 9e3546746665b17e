"""Seeded random modules over small algebras, as plain integer matrices mod p."""
from __future__ import annotations

import random

from corings import fixtures as fx
from corings.exactla import Field, Matrix
from corings.structures import Algebra, Bimodule


def _mm(A, B, p):
    return [[sum(a * b for a, b in zip(r, c)) % p for c in zip(*B)] for r in A]


def _eye(n):
    return [[int(i == j) for j in range(n)] for i in range(n)]


def _blockdiag(blocks):
    n = sum(len(b) for b in blocks)
    out = [[0] * n for _ in range(n)]
    k = 0
    for b in blocks:
        for i, r in enumerate(b):
            for j, v in enumerate(r):
                out[k + i][k + j] = v
        k += len(b)
    return out


def _inv_mod(M, p):
    n = len(M)
    A = [list(r) + e for r, e in zip(M, _eye(n))]
    for c in range(n):
        piv = next((i for i in range(c, n) if A[i][c] % p), None)
        if piv is None:
            return None
        A[c], A[piv] = A[piv], A[c]
        inv = pow(A[c][c], p - 2, p)
        A[c] = [x * inv % p for x in A[c]]
        for i in range(n):
            if i != c and A[i][c]:
                f = A[i][c]
                A[i] = [(x - f * y) % p for x, y in zip(A[i], A[c])]
    return [r[n:] for r in A]


def dual_numbers(F: Field) -> Algebra:
    return Algebra.from_table(F, 2, {(0, 0, 0): 1, (0, 1, 1): 1, (1, 0, 1): 1}, [1, 0], ("1", "t"))


# generator blocks: name -> list of (dim, {generator: matrix})
_BLOCKS = {
    "kC2": [(1, {"g": [[1]]}), (1, {"g": [[-1]]})],
    "dual": [(1, {"t": [[0]]}), (2, {"t": [[0, 0], [1, 0]]})],
    "H4": [(1, {"g": [[1]], "x": [[0]]}), (1, {"g": [[-1]], "x": [[0]]}),
           (2, {"g": [[1, 0], [0, -1]], "x": [[0, 0], [1, 0]]}),
           (2, {"g": [[-1, 0], [0, 1]], "x": [[0, 0], [1, 0]]})],
}


def algebra(name: str, F: Field) -> Algebra:
    return {"kC2": fx.group_algebra_c2, "dual": dual_numbers, "H4": fx.sweedler_algebra}[name](F)


def _basis_images(name: str, gens: dict, n: int, p: int) -> list:
    I = _eye(n)
    if name == "kC2":
        return [I, gens["g"]]
    if name == "dual":
        return [I, gens["t"]]
    return [I, gens["g"], gens["x"], _mm(gens["g"], gens["x"], p)]


def random_rep(name: str, p: int, rng: random.Random, max_dim: int = 4) -> list:
    """Left representation: matrices of the basis elements, conjugated by a random invertible matrix."""
    chosen = []
    dim = 0
    target = rng.randint(1, max_dim)
    while dim < target:
        d, g = rng.choice(_BLOCKS[name])
        if dim + d > target:
            continue
        chosen.append(g)
        dim += d
    gens = {k: [[v % p for v in r] for r in _blockdiag([c[k] for c in chosen])] for k in chosen[0]}
    while True:
        P = [[rng.randrange(p) for _ in range(dim)] for _ in range(dim)]
        Pi = _inv_mod(P, p)
        if Pi is not None:
            break
    gens = {k: _mm(_mm(P, v, p), Pi, p) for k, v in gens.items()}
    return _basis_images(name, gens, dim, p)


def transpose(M):
    return [list(r) for r in zip(*M)]


def right_module(A: Algebra, rep: list) -> Bimodule:
    """m . a = rho(a)^T m; a right module because transposition reverses products."""
    F = A.field
    n = len(rep[0])
    return Bimodule(Algebra.ground(F), A, n, None, [Matrix.from_rows(F, transpose(r)) for r in rep], "M")


def left_module(A: Algebra, rep: list) -> Bimodule:
    F = A.field
    n = len(rep[0])
    return Bimodule(A, Algebra.ground(F), n, [Matrix.from_rows(F, r) for r in rep], None, "N")
