"""Exact linear algebra over Q: row reduction, canonical subspaces, solving.

Vectors are tuples of ``Fraction``.  Nothing here touches floating point.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

from .errors import DimensionMismatch

Vector = tuple  # tuple[Fraction, ...]

ZERO = Fraction(0)


def vec(values) -> Vector:
    return tuple(v if type(v) is Fraction else Fraction(v) for v in values)


def zero_vector(n: int) -> Vector:
    return (ZERO,) * n


def unit_vector(n: int, i: int) -> Vector:
    return tuple(Fraction(1) if k == i else ZERO for k in range(n))


def add(u: Vector, v: Vector) -> Vector:
    return tuple(a + b for a, b in zip(u, v))


def sub(u: Vector, v: Vector) -> Vector:
    return tuple(a - b for a, b in zip(u, v))


def scale(c, u: Vector) -> Vector:
    return tuple(c * a for a in u)


def combine(coeffs: Sequence, vectors: Sequence[Vector], n: int) -> Vector:
    out = [ZERO] * n
    for c, v in zip(coeffs, vectors):
        if c:
            for k, a in enumerate(v):
                if a:
                    out[k] += c * a
    return tuple(out)


def is_zero(u: Vector) -> bool:
    return not any(u)


def rref(rows: Iterable[Sequence], ncols: int) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form; returns (nonzero rows, pivot columns)."""
    m = [list(vec(r)) for r in rows]
    for r in m:
        if len(r) != ncols:
            raise DimensionMismatch(f"row of length {len(r)}, expected {ncols}")
    pivots: list[int] = []
    top = 0
    for col in range(ncols):
        pr = next((r for r in range(top, len(m)) if m[r][col] != 0), None)
        if pr is None:
            continue
        m[top], m[pr] = m[pr], m[top]
        p = m[top][col]
        if p != 1:
            m[top] = [a / p for a in m[top]]
        prow = m[top]
        for r in range(len(m)):
            if r != top and m[r][col] != 0:
                f = m[r][col]
                m[r] = [a - f * b for a, b in zip(m[r], prow)]
        pivots.append(col)
        top += 1
        if top == len(m):
            break
    return m[:top], pivots


def rank(rows: Iterable[Sequence], ncols: int) -> int:
    return len(rref(rows, ncols)[1])


def nullspace(rows: Sequence[Sequence], ncols: int) -> list[Vector]:
    """Basis of {x : M x = 0} for the matrix with the given rows."""
    red, pivots = rref(rows, ncols)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        x = [ZERO] * ncols
        x[f] = Fraction(1)
        for row, pc in zip(red, pivots):
            x[pc] = -row[f]
        basis.append(tuple(x))
    return basis


def solve(columns: Sequence[Vector], target: Vector) -> Vector | None:
    """Coefficients c with sum c_k columns[k] = target, or None if unsolvable.

    ``columns`` must be linearly independent for the answer to be unique.
    """
    n = len(target)
    k = len(columns)
    aug = [[columns[j][i] for j in range(k)] + [target[i]] for i in range(n)]
    red, pivots = rref(aug, k + 1)
    if k in pivots:
        return None
    x = [ZERO] * k
    for row, pc in zip(red, pivots):
        x[pc] = row[k]
    return tuple(x)


def inverse(matrix: Sequence[Sequence]) -> list[list[Fraction]]:
    n = len(matrix)
    aug = [list(vec(row)) + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(matrix)]
    red, pivots = rref(aug, 2 * n)
    if [p for p in pivots if p < n] != list(range(n)):
        raise DimensionMismatch("matrix is singular")
    return [row[n:] for row in red]


class Subspace:
    """Subspace of Q^n in canonical (RREF) form.

    Two Subspaces spanning the same space have identical ``basis`` tuples,
    so equality is plain tuple equality.
    """

    __slots__ = ("ambient_dim", "basis", "pivots")

    def __init__(self, ambient_dim: int, vectors: Iterable[Sequence] = ()):
        red, pivots = rref(vectors, ambient_dim)
        self.ambient_dim = ambient_dim
        self.basis: tuple[Vector, ...] = tuple(tuple(r) for r in red)
        self.pivots = tuple(pivots)

    @classmethod
    def full(cls, n: int) -> Subspace:
        return cls(n, [unit_vector(n, i) for i in range(n)])

    @property
    def dim(self) -> int:
        return len(self.basis)

    def is_zero(self) -> bool:
        return not self.basis

    def reduce(self, v: Sequence) -> Vector:
        """Remainder of v after eliminating the pivot coordinates."""
        v = list(v)
        for row, pc in zip(self.basis, self.pivots):
            c = v[pc]
            if c:
                v = [a - c * b for a, b in zip(v, row)]
        return tuple(v)

    def contains(self, v: Sequence) -> bool:
        if len(v) != self.ambient_dim:
            raise DimensionMismatch(f"vector of length {len(v)} in ambient dimension {self.ambient_dim}")
        return is_zero(self.reduce(v))

    def contains_space(self, other: Subspace) -> bool:
        return all(self.contains(v) for v in other.basis)

    def __add__(self, other: Subspace) -> Subspace:
        return Subspace(self.ambient_dim, self.basis + other.basis)

    def extend(self, vectors: Iterable[Sequence]) -> Subspace:
        return Subspace(self.ambient_dim, list(self.basis) + [tuple(v) for v in vectors])

    def intersection(self, other: Subspace) -> Subspace:
        a, b = self.basis, other.basis
        if not a or not b:
            return Subspace(self.ambient_dim)
        n = self.ambient_dim
        # columns of [A | -B]; null vectors give a.A = b.B
        rows = [[a[j][i] for j in range(len(a))] + [-b[j][i] for j in range(len(b))] for i in range(n)]
        null = nullspace(rows, len(a) + len(b))
        return Subspace(n, [combine(x[: len(a)], a, n) for x in null])

    def coordinates(self, v: Sequence) -> Vector | None:
        """Coordinates of v in the canonical basis (None if v is not in the span)."""
        if not self.contains(v):
            return None
        return tuple(v[pc] for pc in self.pivots)

    def __eq__(self, other):
        return isinstance(other, Subspace) and self.ambient_dim == other.ambient_dim and self.basis == other.basis

    def __hash__(self):
        return hash((self.ambient_dim, self.basis))

    def __le__(self, other: Subspace) -> bool:
        return other.contains_space(self)

    def __repr__(self):
        return f"Subspace(ambient_dim={self.ambient_dim}, dim={self.dim})"
