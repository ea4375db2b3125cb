"""Exact linear algebra over the ring of integers modulo d.

Matrices and vectors carry their modulus explicitly and store entries as
canonical representatives in [0, d).  Everything is computed with Python
integers; there is no floating point anywhere.

The Smith reduction works on integer representatives, reducing mod d after
every elementary operation (reducing mod d is the same as adding rows of
d times the identity, so the augmentation by d*I is implicit).  Pivots are
normalised to divisors of d by scaling with a unit, which is always
possible and sidesteps zero-divisor pivots.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import product as _cartesian
from typing import Iterable, Iterator, Optional, Sequence

from .errors import InconsistentValues, NotFree

Vector = tuple[int, ...]


def vec_reduce(v: Sequence[int], d: int) -> Vector:
    return tuple(x % d for x in v)


def vec_add(u: Sequence[int], v: Sequence[int], d: int) -> Vector:
    return tuple((x + y) % d for x, y in zip(u, v))


def vec_sub(u: Sequence[int], v: Sequence[int], d: int) -> Vector:
    return tuple((x - y) % d for x, y in zip(u, v))


def vec_scale(c: int, v: Sequence[int], d: int) -> Vector:
    return tuple((c * x) % d for x in v)


def vec_dot(u: Sequence[int], v: Sequence[int], d: int) -> int:
    return sum(x * y for x, y in zip(u, v)) % d


def vector_order(v: Sequence[int], d: int) -> int:
    """Additive order of v in (Z/dZ)^m."""
    g = d
    for x in v:
        g = math.gcd(g, x)
        if g == 1:
            break
    return d // g


def divisors(d: int) -> list[int]:
    """Positive divisors of d in increasing order."""
    small, large = [], []
    k = 1
    while k * k <= d:
        if d % k == 0:
            small.append(k)
            if k * k != d:
                large.append(d // k)
        k += 1
    return small + large[::-1]


def unit_lifting_gcd(a: int, d: int) -> int:
    """A unit u mod d with u*a == gcd(a, d) mod d.

    Requires 0 < a < d.  Existence is the standard fact that every
    residue is a unit multiple of its gcd with the modulus.
    """
    g = math.gcd(a, d)
    m = d // g
    a0 = (a // g) % m
    u = pow(a0, -1, m) if m > 1 else 1
    while math.gcd(u, d) != 1:
        u += m
    return u % d


@dataclass(frozen=True)
class ZdMatrix:
    """Matrix over Z/dZ with entries stored canonically in [0, d).

    The shape is stored explicitly so zero-row and zero-column matrices
    keep their dimensions.
    """

    modulus: int
    entries: tuple[tuple[int, ...], ...]
    shape: tuple[int, int] = None  # type: ignore[assignment]

    def __post_init__(self):
        if self.modulus < 1:
            raise ValueError("modulus must be >= 1")
        d = self.modulus
        rows = tuple(tuple(x % d for x in row) for row in self.entries)
        shape = self.shape
        if shape is None:
            shape = (len(rows), len(rows[0]) if rows else 0)
        if len(rows) != shape[0] or any(len(r) != shape[1] for r in rows):
            raise ValueError("entries do not match shape")
        object.__setattr__(self, "entries", rows)
        object.__setattr__(self, "shape", shape)

    @classmethod
    def from_rows(cls, d: int, rows: Iterable[Sequence[int]], cols: int | None = None) -> "ZdMatrix":
        rows = tuple(tuple(r) for r in rows)
        if cols is None:
            cols = len(rows[0]) if rows else 0
        return cls(d, rows, (len(rows), cols))

    @classmethod
    def identity(cls, d: int, n: int) -> "ZdMatrix":
        return cls(d, tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n)), (n, n))

    @classmethod
    def zeros(cls, d: int, r: int, c: int) -> "ZdMatrix":
        return cls(d, tuple((0,) * c for _ in range(r)), (r, c))

    @property
    def rows(self) -> int:
        return self.shape[0]

    @property
    def cols(self) -> int:
        return self.shape[1]

    def row(self, i: int) -> Vector:
        return self.entries[i]

    def col(self, j: int) -> Vector:
        return tuple(r[j] for r in self.entries)

    def transpose(self) -> "ZdMatrix":
        return ZdMatrix(
            self.modulus,
            tuple(zip(*self.entries)) if self.entries else ((),) * 0,
            (self.cols, self.rows),
        ) if self.rows else ZdMatrix.zeros(self.modulus, self.cols, 0)

    def __matmul__(self, other: "ZdMatrix") -> "ZdMatrix":
        if self.modulus != other.modulus or self.cols != other.rows:
            raise ValueError("incompatible matrices")
        d = self.modulus
        out = tuple(
            tuple(
                sum(self.entries[i][k] * other.entries[k][j] for k in range(self.cols)) % d
                for j in range(other.cols)
            )
            for i in range(self.rows)
        )
        return ZdMatrix(d, out, (self.rows, other.cols))

    def mul_vector(self, v: Sequence[int]) -> Vector:
        if len(v) != self.cols:
            raise ValueError("bad vector length")
        d = self.modulus
        return tuple(sum(a * b for a, b in zip(row, v)) % d for row in self.entries)

    def det(self) -> int:
        """Determinant computed exactly (Bareiss on the integer lift), mod d."""
        n = self.rows
        if n != self.cols:
            raise ValueError("determinant of a non-square matrix")
        if n == 0:
            return 1 % self.modulus
        m = [list(r) for r in self.entries]
        sign, prev = 1, 1
        for k in range(n - 1):
            if m[k][k] == 0:
                for i in range(k + 1, n):
                    if m[i][k] != 0:
                        m[k], m[i] = m[i], m[k]
                        sign = -sign
                        break
                else:
                    return 0
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
                m[i][k] = 0
            prev = m[k][k]
        return (sign * m[n - 1][n - 1]) % self.modulus

    def is_invertible(self) -> bool:
        return math.gcd(self.det(), self.modulus) == 1


@dataclass(frozen=True)
class SmithForm:
    """Result of Smith reduction: u @ a @ v is diagonal.

    diag holds one entry per diagonal position of the reduced matrix, each a
    positive divisor of d; the value d itself encodes a zero entry.  The
    divisor chain diag[0] | diag[1] | ... | d holds, and u, v (with their
    tracked inverses) are invertible over Z/dZ.
    """

    u: ZdMatrix
    v: ZdMatrix
    diag: tuple[int, ...]
    u_inv: ZdMatrix
    v_inv: ZdMatrix

    def reconstruct(self, rows: int, cols: int) -> ZdMatrix:
        """The diagonal matrix u @ a @ v, for checking."""
        d = self.u.modulus
        out = [[0] * cols for _ in range(rows)]
        for i, s in enumerate(self.diag):
            out[i][i] = s % d
        return ZdMatrix.from_rows(d, out)


def smith_normal_form(mat: ZdMatrix) -> SmithForm:
    """Smith form over Z/dZ with invertible row/column transforms.

    Pivot choice: smallest nonzero entry of the working submatrix, ties
    broken by lowest (row, col).  Each pivot is normalised to gcd(pivot, d)
    by a unit row scaling, so the diagonal consists of divisors of d.
    """
    d = mat.modulus
    r, c = mat.rows, mat.cols
    m = [list(row) for row in mat.entries]
    u = [[1 if i == j else 0 for j in range(r)] for i in range(r)]
    ui = [[1 if i == j else 0 for j in range(r)] for i in range(r)]
    v = [[1 if i == j else 0 for j in range(c)] for i in range(c)]
    vi = [[1 if i == j else 0 for j in range(c)] for i in range(c)]

    def row_swap(i, j):
        m[i], m[j] = m[j], m[i]
        u[i], u[j] = u[j], u[i]
        for row in ui:
            row[i], row[j] = row[j], row[i]

    def row_addmul(i, j, q):
        # row_i += q * row_j
        if q == 0:
            return
        m[i] = [(x + q * y) % d for x, y in zip(m[i], m[j])]
        u[i] = [(x + q * y) % d for x, y in zip(u[i], u[j])]
        for row in ui:
            row[j] = (row[j] - q * row[i]) % d

    def row_scale(i, w):
        winv = pow(w, -1, d) if d > 1 else 0
        m[i] = [(w * x) % d for x in m[i]]
        u[i] = [(w * x) % d for x in u[i]]
        for row in ui:
            row[i] = (row[i] * winv) % d

    def col_swap(i, j):
        for row in m:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]
        vi[i], vi[j] = vi[j], vi[i]

    def col_addmul(j, k, q):
        # col_j += q * col_k
        if q == 0:
            return
        for row in m:
            row[j] = (row[j] + q * row[k]) % d
        for row in v:
            row[j] = (row[j] + q * row[k]) % d
        vi[k] = [(x - q * y) % d for x, y in zip(vi[k], vi[j])]

    def min_nonzero(k):
        best = None
        for i in range(k, r):
            mi = m[i]
            for j in range(k, c):
                x = mi[j]
                if x and (best is None or x < best[0]):
                    best = (x, i, j)
                    if x == 1:
                        return best
        return best

    for k in range(min(r, c)):
        while True:
            pos = min_nonzero(k)
            if pos is None:
                break
            _, i0, j0 = pos
            if i0 != k:
                row_swap(k, i0)
            if j0 != k:
                col_swap(k, j0)
            p = m[k][k]
            dirty = False
            for i in range(k + 1, r):
                if m[i][k]:
                    row_addmul(i, k, (-(m[i][k] // p)) % d)
                    if m[i][k]:
                        dirty = True
            for j in range(k + 1, c):
                if m[k][j]:
                    col_addmul(j, k, (-(m[k][j] // p)) % d)
                    if m[k][j]:
                        dirty = True
            if dirty:
                continue
            g = math.gcd(p, d)
            if g != p:
                row_scale(k, unit_lifting_gcd(p, d))
                p = g
            bad = None
            for i in range(k + 1, r):
                mi = m[i]
                for j in range(k + 1, c):
                    if mi[j] % p:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            row_addmul(k, bad, 1)

    diag = tuple(m[i][i] if m[i][i] else d for i in range(min(r, c)))
    return SmithForm(
        u=ZdMatrix.from_rows(d, u),
        v=ZdMatrix.from_rows(d, v),
        diag=diag,
        u_inv=ZdMatrix.from_rows(d, ui),
        v_inv=ZdMatrix.from_rows(d, vi),
    )


def solve_linear(mat: ZdMatrix, b: Sequence[int]) -> Optional[Vector]:
    """Some x with mat @ x == b mod d, or None if there is no solution."""
    d = mat.modulus
    r, c = mat.rows, mat.cols
    if len(b) != r:
        raise ValueError("bad right-hand side length")
    if r == 0:
        return (0,) * c
    s = smith_normal_form(mat)
    cvec = s.u.mul_vector(vec_reduce(b, d))
    y = [0] * c
    for i in range(r):
        if i < len(s.diag):
            si = s.diag[i]
            if cvec[i] % si:
                return None
            y[i] = cvec[i] // si
        elif cvec[i]:
            return None
    return s.v.mul_vector(y)


def kernel_matrix(mat: ZdMatrix) -> list[Vector]:
    """Generators of {x : mat @ x == 0 mod d}."""
    d = mat.modulus
    c = mat.cols
    if c == 0:
        return []
    s = smith_normal_form(mat)
    gens = []
    for i in range(c):
        if i < len(s.diag):
            mult = d // s.diag[i]
            if mult % d == 0:
                continue
            gens.append(vec_scale(mult, s.v.col(i), d))
        else:
            gens.append(s.v.col(i))
    return gens


class Submodule:
    """Finitely generated submodule of (Z/dZ)^m, with cached Smith data.

    Instances are immutable by convention; all derived data is computed
    once from the generator tuple.
    """

    def __init__(self, modulus: int, ambient_rank: int, generators: Iterable[Sequence[int]]):
        self.modulus = modulus
        self.ambient_rank = ambient_rank
        gens = []
        for g in generators:
            g = vec_reduce(g, modulus)
            if len(g) != ambient_rank:
                raise ValueError("generator has wrong length")
            if any(g):
                gens.append(g)
        self.generators: tuple[Vector, ...] = tuple(gens)
        self._smith: Optional[SmithForm] = None

    @classmethod
    def zero(cls, d: int, m: int) -> "Submodule":
        return cls(d, m, ())

    @classmethod
    def full(cls, d: int, m: int) -> "Submodule":
        return cls(d, m, ZdMatrix.identity(d, m).entries)

    @property
    def generator_matrix(self) -> ZdMatrix:
        return ZdMatrix.from_rows(self.modulus, self.generators) if self.generators \
            else ZdMatrix.zeros(self.modulus, 0, self.ambient_rank)

    @property
    def smith(self) -> SmithForm:
        if self._smith is None:
            self._smith = smith_normal_form(self.generator_matrix)
        return self._smith

    @property
    def invariant_factors(self) -> tuple[int, ...]:
        """Unique chain 1 < d_1 | ... | d_t | d with the module = direct sum of Z_{d_r}."""
        d = self.modulus
        facs = sorted(d // s for s in self.smith.diag if s != d)
        return tuple(f for f in facs if f > 1)

    @property
    def cardinality(self) -> int:
        out = 1
        for f in self.invariant_factors:
            out *= f
        return out

    @property
    def rank(self) -> int:
        return len(self.invariant_factors)

    @property
    def is_free(self) -> bool:
        return all(f == self.modulus for f in self.invariant_factors)

    @property
    def is_zero(self) -> bool:
        return not self.invariant_factors

    def quasi_basis(self) -> list[tuple[Vector, int]]:
        """(element, order) pairs spanning the module with diagonal relations.

        Ordered by increasing order; the last element has maximal order.
        """
        d = self.modulus
        s = self.smith
        out = []
        for i, si in enumerate(s.diag):
            if si == d:
                continue
            vec = vec_scale(si, s.v_inv.row(i), d)
            out.append((vec, d // si))
        out.reverse()
        return out

    def coefficients_for(self, v: Sequence[int]) -> Optional[Vector]:
        """lam with lam . generators == v, or None if v is not in the module."""
        v = vec_reduce(v, self.modulus)
        if not self.generators:
            return () if not any(v) else None
        return solve_linear(self.generator_matrix.transpose(), v)

    def contains(self, v: Sequence[int]) -> bool:
        return self.coefficients_for(v) is not None

    def contains_module(self, other: "Submodule") -> bool:
        return all(self.contains(g) for g in other.generators)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Submodule):
            return NotImplemented
        return (
            self.modulus == other.modulus
            and self.ambient_rank == other.ambient_rank
            and self.contains_module(other)
            and other.contains_module(self)
        )

    __hash__ = None

    def intersection(self, other: "Submodule") -> "Submodule":
        """Joint-membership system: x = lam.G1 = mu.G2."""
        if (self.modulus, self.ambient_rank) != (other.modulus, other.ambient_rank):
            raise ValueError("modules live in different ambients")
        d, m = self.modulus, self.ambient_rank
        if not self.generators or not other.generators:
            return Submodule.zero(d, m)
        g1, g2 = self.generators, other.generators
        cols = [list(col) for col in zip(*g1)] if g1 else []
        for i in range(m):
            cols[i].extend(-x % d for x in (g[i] for g in g2))
        stacked = ZdMatrix.from_rows(d, cols)
        gens = []
        for w in kernel_matrix(stacked):
            lam = w[: len(g1)]
            x = (0,) * m
            for coef, g in zip(lam, g1):
                x = vec_add(x, vec_scale(coef, g, d), d)
            gens.append(x)
        return Submodule(d, m, gens)

    def sum_with(self, other: "Submodule") -> "Submodule":
        if (self.modulus, self.ambient_rank) != (other.modulus, other.ambient_rank):
            raise ValueError("modules live in different ambients")
        return Submodule(self.modulus, self.ambient_rank, self.generators + other.generators)

    def enumerate_elements(self) -> Iterator[Vector]:
        """All elements, via quasi-basis coefficients (no duplicates)."""
        qb = self.quasi_basis()
        d, m = self.modulus, self.ambient_rank
        if not qb:
            yield (0,) * m
            return
        vecs = [q[0] for q in qb]
        orders = [q[1] for q in qb]
        for coeffs in _cartesian(*(range(o) for o in orders)):
            x = (0,) * m
            for cf, vec in zip(coeffs, vecs):
                if cf:
                    x = vec_add(x, vec_scale(cf, vec, d), d)
            yield x

    def __repr__(self) -> str:
        return f"Submodule(d={self.modulus}, m={self.ambient_rank}, gens={list(self.generators)})"


@dataclass(frozen=True)
class LinearForm:
    """m |-> sum(coefficients[i] * m[i]) over Z/dZ."""

    modulus: int
    coefficients: Vector

    def __post_init__(self):
        object.__setattr__(self, "coefficients", vec_reduce(self.coefficients, self.modulus))

    def __call__(self, v: Sequence[int]) -> int:
        return vec_dot(self.coefficients, v, self.modulus)


def extend_linear_form(module: Submodule, values: Sequence[int]) -> LinearForm:
    """Extend a form given by values on the generators to the whole ambient.

    Raises InconsistentValues when the prescription violates a relation
    among the generators (i.e. it was not a well-defined form).
    """
    if len(values) != len(module.generators):
        raise ValueError("one value per generator required")
    coeffs = solve_linear(module.generator_matrix, values)
    if coeffs is None:
        raise InconsistentValues("values do not respect the generator relations")
    return LinearForm(module.modulus, coeffs)


def complete_free_basis(module: Submodule, basis: Sequence[Sequence[int]]) -> tuple[Vector, ...]:
    """Complete a basis of a free submodule to a basis of the ambient module."""
    d, m = module.modulus, module.ambient_rank
    rows = [vec_reduce(b, d) for b in basis]
    for b in rows:
        if not module.contains(b):
            raise ValueError("basis vector does not lie in the module")
    s = smith_normal_form(ZdMatrix.from_rows(d, rows) if rows else ZdMatrix.zeros(d, 0, m))
    if any(x != 1 for x in s.diag):
        raise NotFree("the given vectors are not a basis of a free submodule")
    completion = [s.v_inv.row(i) for i in range(len(rows), m)]
    return tuple(rows) + tuple(completion)


def quotient_quasi_basis(
    gens: Sequence[Vector], modulo: Submodule
) -> list[tuple[Vector, int]]:
    """Quasi-basis of span(gens)/modulo as (representative, coset order) pairs.

    Representatives are ambient vectors; orders are ascending and trivial
    components are dropped.  Requires modulo to be contained in span(gens).
    """
    d = modulo.modulus
    m = modulo.ambient_rank
    c = len(gens)
    if c == 0:
        return []
    tg = modulo.generators
    cols = [list(col) for col in zip(*gens)]
    for i in range(m):
        cols[i].extend(g[i] for g in tg)
    stacked = ZdMatrix.from_rows(d, cols)
    lam_rows = [w[:c] for w in kernel_matrix(stacked)]
    lam = ZdMatrix.from_rows(d, lam_rows) if lam_rows else ZdMatrix.zeros(d, 0, c)
    s = smith_normal_form(lam)
    out = []
    for i in range(c):
        order = s.diag[i] if i < len(s.diag) else d
        if order == 1:
            continue
        beta = s.v_inv.row(i)
        rep = (0,) * m
        for coef, g in zip(beta, gens):
            if coef:
                rep = vec_add(rep, vec_scale(coef, g, d), d)
        out.append((rep, order))
    return out
