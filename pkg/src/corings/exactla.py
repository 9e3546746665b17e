"""Exact linear algebra over Q and F_p.

Scalars are ``gmpy2.mpq`` for the rationals and a small ``int`` subclass for
prime fields, so ordinary Python operators work on both.  Matrices are dense
(row lists); elimination runs on sparse dict rows and always produces the
reduced row echelon form, which makes subspace equality a representation
equality.
"""
from __future__ import annotations

import random
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

from gmpy2 import mpq


class ContractViolation(ValueError):
    """Raised when an operation is called with incompatible shapes or fields."""


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


@lru_cache(maxsize=None)
def _modp_class(p: int) -> type:
    class ModP(int):
        __slots__ = ()
        modulus = p

        def __new__(cls, v=0):
            return int.__new__(cls, int(v) % p)

        def __add__(self, o):
            return ModP(int(self) + int(o))

        __radd__ = __add__

        def __sub__(self, o):
            return ModP(int(self) - int(o))

        def __rsub__(self, o):
            return ModP(int(o) - int(self))

        def __mul__(self, o):
            return ModP(int(self) * int(o))

        __rmul__ = __mul__

        def __neg__(self):
            return ModP(-int(self))

        def __truediv__(self, o):
            o = int(o) % p
            if o == 0:
                raise ZeroDivisionError("division by zero in F_%d" % p)
            return ModP(int(self) * pow(o, -1, p))

        def __rtruediv__(self, o):
            return ModP(o) / self

        def __pow__(self, e):
            return ModP(pow(int(self), e, p))

        def __repr__(self):
            return "%d" % int(self)

    ModP.__name__ = "F%d" % p
    return ModP


class Field:
    """The base field: ``Field()`` is Q, ``Field(p)`` is F_p."""

    def __init__(self, p: int | None = None):
        if p is not None and not _is_prime(p):
            raise ContractViolation("%r is not prime" % p)
        self.p = p
        self._cls = None if p is None else _modp_class(p)

    @classmethod
    def rationals(cls) -> "Field":
        return cls()

    @classmethod
    def prime(cls, p: int) -> "Field":
        return cls(p)

    @classmethod
    def from_spec(cls, spec: str) -> "Field":
        spec = spec.strip().lower()
        if spec in ("q", "qq", "rationals"):
            return cls()
        if spec.startswith("fp:"):
            return cls(int(spec[3:]))
        raise ContractViolation("unknown field spec %r" % spec)

    @property
    def spec(self) -> str:
        return "q" if self.p is None else "fp:%d" % self.p

    @property
    def kind(self) -> str:
        return "Rationals" if self.p is None else "PrimeField"

    def __call__(self, x) -> object:
        if self.p is None:
            if isinstance(x, str):
                return mpq(Fraction(x.strip()))
            return mpq(x)
        if isinstance(x, str):
            x = Fraction(x.strip())
        if isinstance(x, (Fraction, type(mpq(0)))):
            num, den = int(x.numerator), int(x.denominator)
            if den % self.p == 0:
                raise ContractViolation("denominator vanishes in F_%d" % self.p)
            return self._cls(num) / self._cls(den)
        return self._cls(int(x))

    @property
    def zero(self):
        return self(0)

    @property
    def one(self):
        return self(1)

    def random_element(self, rng: random.Random, bound: int = 5):
        if self.p is None:
            return mpq(rng.randint(-bound, bound))
        return self._cls(rng.randrange(self.p))

    def __eq__(self, other):
        return isinstance(other, Field) and other.p == self.p

    def __hash__(self):
        return hash(("Field", self.p))

    def __repr__(self):
        return "Q" if self.p is None else "F_%d" % self.p


QQ = Field()


def fmt(x) -> str:
    """Canonical text for a scalar (``p/q`` or integer)."""
    return str(x)


# ---------------------------------------------------------------- vectors

def zero_vec(F: Field, n: int) -> list:
    z = F.zero
    return [z] * n


def unit_vec(F: Field, n: int, i: int) -> list:
    v = zero_vec(F, n)
    v[i] = F.one
    return v


def vadd(u: Sequence, v: Sequence) -> list:
    return [a + b for a, b in zip(u, v)]


def vsub(u: Sequence, v: Sequence) -> list:
    return [a - b for a, b in zip(u, v)]


def vscale(c, u: Sequence) -> list:
    return [c * a for a in u]


def is_zero_vec(u: Iterable) -> bool:
    return all(a == 0 for a in u)


def lincomb(F: Field, n: int, terms: Iterable) -> list:
    """Sum of ``c * v`` over ``(c, v)`` pairs, skipping zero coefficients."""
    out = zero_vec(F, n)
    for c, v in terms:
        if c == 0:
            continue
        for k, a in enumerate(v):
            if a != 0:
                out[k] = out[k] + c * a
    return out


def kron_vec(u: Sequence, v: Sequence) -> list:
    """Coordinates of ``u (x) v`` with index ``i * len(v) + j``."""
    z = v[0] * 0 if len(v) else 0
    out = []
    for a in u:
        if a == 0:
            out.extend([z] * len(v))
        else:
            out.extend(a * b for b in v)
    return out


# ---------------------------------------------------------------- matrices

class Matrix:
    """Dense matrix of exact scalars; ``M @ v`` applies it to a column vector."""

    __slots__ = ("field", "rows", "cols", "data")

    def __init__(self, field: Field, rows: int, cols: int, data=None):
        self.field = field
        self.rows = rows
        self.cols = cols
        if data is None:
            z = field.zero
            data = [[z] * cols for _ in range(rows)]
        else:
            t = type(field.one)
            data = [[a if type(a) is t else field(a) for a in r] for r in data]
            if len(data) != rows or any(len(r) != cols for r in data):
                raise ContractViolation("matrix data does not match %dx%d" % (rows, cols))
        self.data = data

    @classmethod
    def identity(cls, F: Field, n: int) -> "Matrix":
        M = cls(F, n, n)
        for i in range(n):
            M.data[i][i] = F.one
        return M

    @classmethod
    def zeros(cls, F: Field, rows: int, cols: int) -> "Matrix":
        return cls(F, rows, cols)

    @classmethod
    def from_columns(cls, F: Field, rows: int, columns: Sequence[Sequence]) -> "Matrix":
        M = cls(F, rows, len(columns))
        for j, col in enumerate(columns):
            if len(col) != rows:
                raise ContractViolation("column %d has length %d, expected %d" % (j, len(col), rows))
            for i, a in enumerate(col):
                if a != 0:
                    M.data[i][j] = F(a)
        return M

    @classmethod
    def from_rows(cls, F: Field, rows: Sequence[Sequence], cols: int | None = None) -> "Matrix":
        if cols is None:
            cols = len(rows[0]) if rows else 0
        return cls(F, len(rows), cols, rows)

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    @property
    def entries(self) -> list:
        return [a for r in self.data for a in r]

    def column(self, j: int) -> list:
        return [r[j] for r in self.data]

    def columns(self) -> list:
        return [self.column(j) for j in range(self.cols)]

    @property
    def T(self) -> "Matrix":
        return Matrix(self.field, self.cols, self.rows, [list(c) for c in zip(*self.data)] if self.rows else [[] for _ in range(self.cols)])

    def apply(self, v: Sequence) -> list:
        if len(v) != self.cols:
            raise ContractViolation("vector of length %d applied to %dx%d matrix" % (len(v), self.rows, self.cols))
        nz = [(j, a) for j, a in enumerate(v) if a != 0]
        z = self.field.zero
        out = []
        for r in self.data:
            s = z
            for j, a in nz:
                b = r[j]
                if b != 0:
                    s = s + b * a
            out.append(s)
        return out

    def __matmul__(self, other):
        if isinstance(other, Matrix):
            if self.cols != other.rows:
                raise ContractViolation("cannot compose %dx%d with %dx%d" % (self.rows, self.cols, other.rows, other.cols))
            cols = [self.apply(c) for c in other.columns()]
            return Matrix.from_columns(self.field, self.rows, cols)
        return self.apply(other)

    def __add__(self, other: "Matrix") -> "Matrix":
        self._same_shape(other)
        return Matrix(self.field, self.rows, self.cols,
                      [[a + b for a, b in zip(r, s)] for r, s in zip(self.data, other.data)])

    def __sub__(self, other: "Matrix") -> "Matrix":
        self._same_shape(other)
        return Matrix(self.field, self.rows, self.cols,
                      [[a - b for a, b in zip(r, s)] for r, s in zip(self.data, other.data)])

    def scale(self, c) -> "Matrix":
        return Matrix(self.field, self.rows, self.cols, [[c * a for a in r] for r in self.data])

    def _same_shape(self, other):
        if self.shape != other.shape:
            raise ContractViolation("shape mismatch %s vs %s" % (self.shape, other.shape))

    def is_zero(self) -> bool:
        return all(a == 0 for r in self.data for a in r)

    def __eq__(self, other):
        return isinstance(other, Matrix) and self.shape == other.shape and self.data == other.data

    def __hash__(self):
        return hash((self.shape, tuple(tuple(r) for r in self.data)))

    def to_lists(self) -> list:
        return [[fmt(a) for a in r] for r in self.data]

    def __repr__(self):
        return "Matrix(%dx%d, %s)" % (self.rows, self.cols, self.to_lists())


def tensor_matrix(M: Matrix, N: Matrix) -> Matrix:
    """Kronecker product, matching :func:`kron_vec` index order."""
    F = M.field
    out = Matrix(F, M.rows * N.rows, M.cols * N.cols)
    for i, mr in enumerate(M.data):
        for j, a in enumerate(mr):
            if a == 0:
                continue
            for k, nr in enumerate(N.data):
                row = out.data[i * N.rows + k]
                base = j * N.cols
                for l, b in enumerate(nr):
                    if b != 0:
                        row[base + l] = a * b
    return out


def hstack(F: Field, blocks: Sequence[Matrix]) -> Matrix:
    rows = blocks[0].rows
    data = [sum((b.data[i] for b in blocks), []) for i in range(rows)]
    return Matrix(F, rows, sum(b.cols for b in blocks), data)


def vstack(F: Field, blocks: Sequence[Matrix]) -> Matrix:
    cols = blocks[0].cols
    data = [r for b in blocks for r in b.data]
    return Matrix(F, len(data), cols, data)


# ---------------------------------------------------------------- elimination

class Echelon:
    """Incrementally maintained reduced row echelon form on sparse rows.

    ``rows`` maps pivot column -> {column: scalar} with a 1 at the pivot and
    zeros at every other pivot column.
    """

    def __init__(self, field: Field, ncols: int):
        self.field = field
        self.ncols = ncols
        self.rows: dict[int, dict] = {}

    def reduce(self, v: dict) -> dict:
        v = dict(v)
        for p in [c for c in v if c in self.rows]:
            c = v.get(p)
            if c is None or c == 0:
                continue
            for k, a in self.rows[p].items():
                nv = v.get(k, 0) - c * a
                if nv == 0:
                    v.pop(k, None)
                else:
                    v[k] = nv
        return v

    def add(self, v: dict) -> int | None:
        """Insert ``v``; returns the new pivot column, or None if dependent."""
        v = self.reduce(v)
        if not v:
            return None
        p = min(v)
        inv = self.field.one / v[p]
        v = {k: a * inv for k, a in v.items()}
        for q, row in self.rows.items():
            c = row.get(p)
            if c is None:
                continue
            for k, a in v.items():
                nv = row.get(k, 0) - c * a
                if nv == 0:
                    row.pop(k, None)
                else:
                    row[k] = nv
        self.rows[p] = v
        return p

    @property
    def rank(self) -> int:
        return len(self.rows)

    def pivots(self) -> list:
        return sorted(self.rows)


def _sparse(v: Sequence) -> dict:
    return {k: a for k, a in enumerate(v) if a != 0}


def _dense(F: Field, n: int, d: dict) -> list:
    v = zero_vec(F, n)
    for k, a in d.items():
        v[k] = a
    return v


def rref_rows(F: Field, ncols: int, vectors: Iterable[Sequence]) -> Echelon:
    E = Echelon(F, ncols)
    for v in vectors:
        if len(v) != ncols:
            raise ContractViolation("vector of length %d in %d-dimensional space" % (len(v), ncols))
        E.add(_sparse(v))
    return E


class Subspace:
    """A subspace of F^n stored by its canonical reduced echelon basis."""

    __slots__ = ("field", "ambient_dim", "_rows", "pivots")

    def __init__(self, field: Field, ambient_dim: int, echelon: Echelon | None = None):
        self.field = field
        self.ambient_dim = ambient_dim
        if echelon is None:
            echelon = Echelon(field, ambient_dim)
        self.pivots = tuple(echelon.pivots())
        self._rows = tuple(echelon.rows[p] for p in self.pivots)

    @classmethod
    def span(cls, F: Field, ambient_dim: int, vectors: Iterable[Sequence]) -> "Subspace":
        return cls(F, ambient_dim, rref_rows(F, ambient_dim, vectors))

    @classmethod
    def zero(cls, F: Field, n: int) -> "Subspace":
        return cls(F, n)

    @classmethod
    def full(cls, F: Field, n: int) -> "Subspace":
        return cls.span(F, n, [unit_vec(F, n, i) for i in range(n)])

    @property
    def dim(self) -> int:
        return len(self.pivots)

    @property
    def basis(self) -> Matrix:
        return Matrix(self.field, self.dim, self.ambient_dim, self.basis_vectors())

    def basis_vectors(self) -> list:
        return [_dense(self.field, self.ambient_dim, r) for r in self._rows]

    def echelon(self) -> Echelon:
        E = Echelon(self.field, self.ambient_dim)
        E.rows = {p: dict(r) for p, r in zip(self.pivots, self._rows)}
        return E

    def contains(self, v: Sequence) -> bool:
        return not self.echelon().reduce(_sparse(v))

    def coordinates(self, v: Sequence) -> list | None:
        """Coordinates of ``v`` in the echelon basis, or None if ``v`` is outside."""
        if not self.contains(v):
            return None
        return [v[p] for p in self.pivots]

    def from_coordinates(self, c: Sequence) -> list:
        return lincomb(self.field, self.ambient_dim, zip(c, self.basis_vectors()))

    def inclusion(self) -> Matrix:
        """Matrix of the inclusion (ambient x dim)."""
        return Matrix.from_columns(self.field, self.ambient_dim, self.basis_vectors())

    def is_subspace_of(self, other: "Subspace") -> bool:
        return all(other.contains(v) for v in self.basis_vectors())

    def __add__(self, other: "Subspace") -> "Subspace":
        return Subspace.span(self.field, self.ambient_dim, self.basis_vectors() + other.basis_vectors())

    def intersect(self, other: "Subspace") -> "Subspace":
        # kernel of [B1^T | -B2^T] gives the common combinations
        b1, b2 = self.basis_vectors(), other.basis_vectors()
        if not b1 or not b2:
            return Subspace.zero(self.field, self.ambient_dim)
        cols = b1 + [vscale(-1, v) for v in b2]
        M = Matrix.from_columns(self.field, self.ambient_dim, cols)
        K = kernel(M)
        vecs = [lincomb(self.field, self.ambient_dim, zip(k[:len(b1)], b1)) for k in K.basis_vectors()]
        return Subspace.span(self.field, self.ambient_dim, vecs)

    def __eq__(self, other):
        return (isinstance(other, Subspace) and self.ambient_dim == other.ambient_dim
                and self.pivots == other.pivots and self._rows == other._rows)

    def __hash__(self):
        return hash((self.ambient_dim, self.pivots))

    def __repr__(self):
        return "Subspace(dim=%d in %d)" % (self.dim, self.ambient_dim)


def _row_echelon(M: Matrix) -> Echelon:
    return rref_rows(M.field, M.cols, M.data)


def rank(M: Matrix) -> int:
    return _row_echelon(M).rank


def image(M: Matrix) -> Subspace:
    """Column space of ``M`` as a subspace of F^rows."""
    return Subspace.span(M.field, M.rows, M.columns())


def kernel(M: Matrix) -> Subspace:
    """Null space {v : M v = 0} as a subspace of F^cols."""
    F = M.field
    E = _row_echelon(M)
    piv = set(E.rows)
    vecs = []
    for f in range(M.cols):
        if f in piv:
            continue
        v = {f: F.one}
        for p, row in E.rows.items():
            c = row.get(f)
            if c is not None:
                v[p] = -c
        vecs.append(_dense(F, M.cols, v))
    return Subspace.span(F, M.cols, vecs)


def solution_space(F: Field, nvars: int, equations: Iterable[dict]) -> Subspace:
    """Common zeros of sparse linear forms ``{var: coeff}``."""
    E = Echelon(F, nvars)
    for eq in equations:
        eq = {k: a for k, a in eq.items() if a != 0}
        if eq:
            E.add(eq)
    piv = set(E.rows)
    vecs = []
    for f in range(nvars):
        if f in piv:
            continue
        v = {f: F.one}
        for p, row in E.rows.items():
            c = row.get(f)
            if c is not None:
                v[p] = -c
        vecs.append(_dense(F, nvars, v))
    return Subspace.span(F, nvars, vecs)


def solve(M: Matrix, b: Sequence) -> list | None:
    """Least-pivot solution of ``M x = b`` (free variables set to 0), or None."""
    if len(b) != M.rows:
        raise ContractViolation("right-hand side of length %d for %d equations" % (len(b), M.rows))
    F = M.field
    n = M.cols
    E = Echelon(F, n + 1)
    for r, bi in zip(M.data, b):
        v = _sparse(r)
        if bi != 0:
            v[n] = bi
        E.add(v)
    if n in E.rows:
        return None
    x = zero_vec(F, n)
    for p, row in E.rows.items():
        x[p] = row.get(n, F.zero)
    return x


def solve_many(M: Matrix, rhs: Sequence[Sequence]) -> list | None:
    """Solve ``M X = [b_1 .. b_k]`` sharing one elimination; None if any is inconsistent."""
    F = M.field
    n, k = M.cols, len(rhs)
    E = Echelon(F, n + k)
    for i, r in enumerate(M.data):
        v = _sparse(r)
        for j, b in enumerate(rhs):
            if b[i] != 0:
                v[n + j] = b[i]
        E.add(v)
    if any(p >= n for p in E.rows):
        return None
    out = []
    for j in range(k):
        x = zero_vec(F, n)
        for p, row in E.rows.items():
            x[p] = row.get(n + j, F.zero)
        out.append(x)
    return out


def is_injective(M: Matrix) -> bool:
    return rank(M) == M.cols


def is_surjective(M: Matrix) -> bool:
    return rank(M) == M.rows


def is_bijective(M: Matrix) -> bool:
    return M.rows == M.cols and rank(M) == M.rows


def inverse(M: Matrix) -> Matrix | None:
    if M.rows != M.cols:
        return None
    F = M.field
    cols = solve_many(M, [unit_vec(F, M.rows, i) for i in range(M.rows)])
    if cols is None:
        return None
    return Matrix.from_columns(F, M.rows, cols)


# ---------------------------------------------------------------- quotients

class QuotientPresentation:
    """F^n / relations, with the canonical echelon section.

    Quotient coordinates are indexed by the non-pivot columns of the
    relations' echelon basis, in increasing order.
    """

    def __init__(self, field: Field, ambient_dim: int, relations: Subspace):
        if relations.ambient_dim != ambient_dim:
            raise ContractViolation("relations live in dimension %d, not %d" % (relations.ambient_dim, ambient_dim))
        self.field = field
        self.ambient_dim = ambient_dim
        self.relations = relations
        piv = set(relations.pivots)
        self.free_columns = tuple(c for c in range(ambient_dim) if c not in piv)
        self._position = {c: k for k, c in enumerate(self.free_columns)}
        self._rows = dict(zip(relations.pivots, relations._rows))
        self._project = None
        self._section = None

    @property
    def quotient_dim(self) -> int:
        return len(self.free_columns)

    def project_vec(self, v: Sequence) -> list:
        F = self.field
        out = zero_vec(F, self.quotient_dim)
        pos = self._position
        for c, a in enumerate(v):
            if a == 0:
                continue
            k = pos.get(c)
            if k is not None:
                out[k] = out[k] + a
            else:
                for col, b in self._rows[c].items():
                    if col != c:
                        j = pos[col]
                        out[j] = out[j] - a * b
        return out

    def project_sparse(self, v: dict) -> list:
        F = self.field
        out = zero_vec(F, self.quotient_dim)
        pos = self._position
        for c, a in v.items():
            if a == 0:
                continue
            k = pos.get(c)
            if k is not None:
                out[k] = out[k] + a
            else:
                for col, b in self._rows[c].items():
                    if col != c:
                        j = pos[col]
                        out[j] = out[j] - a * b
        return out

    def section_vec(self, w: Sequence) -> list:
        v = zero_vec(self.field, self.ambient_dim)
        for k, a in enumerate(w):
            if a != 0:
                v[self.free_columns[k]] = a
        return v

    @property
    def project(self) -> Matrix:
        if self._project is None:
            F = self.field
            cols = [self.project_vec(unit_vec(F, self.ambient_dim, c)) for c in range(self.ambient_dim)]
            self._project = Matrix.from_columns(F, self.quotient_dim, cols)
        return self._project

    @property
    def section(self) -> Matrix:
        if self._section is None:
            F = self.field
            cols = [unit_vec(F, self.ambient_dim, c) for c in self.free_columns]
            self._section = Matrix.from_columns(F, self.ambient_dim, cols)
        return self._section

    def __repr__(self):
        return "QuotientPresentation(%d -> %d)" % (self.ambient_dim, self.quotient_dim)


def quotient(ambient_dim: int, relations: Subspace) -> QuotientPresentation:
    return QuotientPresentation(relations.field, ambient_dim, relations)


def dual_basis(F: Field, n: int) -> tuple[list, list, Matrix]:
    """Standard basis e_j, coordinate functionals f_i, and the pairing table <f_i, e_j>."""
    es = [unit_vec(F, n, j) for j in range(n)]
    fs = [unit_vec(F, n, i) for i in range(n)]
    table = Matrix(F, n, n, [[sum((a * b for a, b in zip(f, e)), F.zero) for e in es] for f in fs])
    return es, fs, table


def random_matrix(F: Field, rows: int, cols: int, rng: random.Random, bound: int = 3, density: float = 1.0) -> Matrix:
    data = [[F.random_element(rng, bound) if rng.random() < density else F.zero for _ in range(cols)]
            for _ in range(rows)]
    return Matrix(F, rows, cols, data)
