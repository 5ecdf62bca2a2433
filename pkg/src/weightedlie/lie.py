"""Finite-dimensional Lie algebras over Q given by structure constants."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

from . import linalg
from .errors import DimensionMismatch, InputError, JacobiViolation, NonNilpotent
from .linalg import Subspace, Vector
from .scalars import as_fraction


class LieAlgebra:
    """Lie algebra with basis ``names`` and brackets ``[X_i, X_j]`` for i < j.

    ``table`` maps index pairs ``(i, j)`` with ``i < j`` to coordinate
    vectors; missing pairs are zero.  Jacobi is checked on construction
    unless ``validate=False`` (used only by ``check_jacobi`` itself).
    """

    def __init__(self, names: Sequence[str], table: Mapping[tuple[int, int], Sequence], validate: bool = True):
        names = tuple(names)
        if not names:
            raise InputError("a Lie algebra needs at least one basis element")
        if len(set(names)) != len(names):
            raise InputError(f"duplicate basis names: {names}")
        n = len(names)
        self.names = names
        self.dim = n
        zero = linalg.zero_vector(n)
        full = [[zero] * n for _ in range(n)]
        clean = {}
        for (i, j), v in table.items():
            if not (0 <= i < n and 0 <= j < n):
                raise DimensionMismatch(f"bracket index ({i}, {j}) out of range for dim {n}")
            v = linalg.vec(v)
            if len(v) != n:
                raise DimensionMismatch(f"bracket [{names[i]},{names[j]}] has {len(v)} coordinates, expected {n}")
            if i == j:
                if any(v):
                    raise InputError(f"[{names[i]},{names[i]}] must vanish")
                continue
            if i > j:
                i, j, v = j, i, linalg.scale(-1, v)
            if any(v):
                clean[(i, j)] = v
                full[i][j] = v
                full[j][i] = linalg.scale(-1, v)
        self.table = dict(sorted(clean.items()))
        self._full = full
        self._index = {name: k for k, name in enumerate(names)}
        if validate:
            check_jacobi(self)

    @classmethod
    def from_relations(cls, names: Sequence[str], relations: Mapping[tuple[str, str], Mapping[str, object]]) -> LieAlgebra:
        """Build from ``{("X", "Y"): {"Z": 1}}`` style relations."""
        names = tuple(names)
        index = {nm: k for k, nm in enumerate(names)}
        table = {}
        for (a, b), coeffs in relations.items():
            try:
                i, j = index[a], index[b]
            except KeyError as exc:
                raise InputError(f"unknown basis element {exc.args[0]!r}") from None
            v = [Fraction(0)] * len(names)
            for nm, c in coeffs.items():
                if nm not in index:
                    raise InputError(f"unknown basis element {nm!r}")
                v[index[nm]] += as_fraction(c)
            if (i, j) in table or (j, i) in table:
                raise InputError(f"bracket [{a},{b}] given twice")
            table[(i, j)] = v
        return cls(names, table)

    @classmethod
    def abelian(cls, n: int, names: Sequence[str] | None = None) -> LieAlgebra:
        names = names or [f"X{k + 1}" for k in range(n)]
        return cls(names, {})

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise InputError(f"unknown basis element {name!r}") from None

    def basis_vector(self, i: int) -> Vector:
        return linalg.unit_vector(self.dim, i)

    def vector(self, coeffs: Mapping[str, object]) -> Vector:
        v = [Fraction(0)] * self.dim
        for nm, c in coeffs.items():
            v[self.index(nm)] += as_fraction(c)
        return tuple(v)

    def structure(self, i: int, j: int) -> Vector:
        return self._full[i][j]

    def bracket(self, u: Sequence, v: Sequence) -> Vector:
        """Bilinear extension of the table."""
        n = self.dim
        if len(u) != n or len(v) != n:
            raise DimensionMismatch(f"bracket of vectors of lengths {len(u)}, {len(v)} in dim {n}")
        out = [Fraction(0)] * n
        for (i, j), c in self.table.items():
            coef = u[i] * v[j] - u[j] * v[i]
            if coef:
                for k, a in enumerate(c):
                    if a:
                        out[k] += coef * a
        return tuple(out)

    def is_abelian(self) -> bool:
        return not self.table

    def bracket_span(self, a: Subspace, b: Subspace) -> Subspace:
        return Subspace(self.dim, [self.bracket(u, v) for u in a.basis for v in b.basis])

    def center(self) -> Subspace:
        n = self.dim
        # x central iff sum_i x_i [X_i, X_j] = 0 for every j
        rows = []
        for j in range(n):
            for k in range(n):
                rows.append([self._full[i][j][k] for i in range(n)])
        return Subspace(n, linalg.nullspace(rows, n))

    def format_vector(self, v: Sequence) -> str:
        from .scalars import fmt_fraction

        parts = []
        for c, nm in zip(v, self.names):
            if not c:
                continue
            if c == 1:
                term = nm
            elif c == -1:
                term = f"-{nm}"
            else:
                term = f"{fmt_fraction(c)}*{nm}"
            parts.append(term)
        if not parts:
            return "0"
        return "+".join(parts).replace("+-", "-")

    def __eq__(self, other):
        return isinstance(other, LieAlgebra) and self.names == other.names and self.table == other.table

    def __hash__(self):
        return hash((self.names, tuple(self.table.items())))

    def __repr__(self):
        return f"LieAlgebra(dim={self.dim}, names={list(self.names)})"


def check_jacobi(alg: LieAlgebra) -> LieAlgebra:
    """Return ``alg`` if [[x,y],z] + [[y,z],x] + [[z,x],y] = 0 on every basis triple."""
    n = alg.dim
    e = [alg.basis_vector(i) for i in range(n)]
    for i, j, k in itertools.combinations(range(n), 3):
        r = linalg.add(
            linalg.add(alg.bracket(alg.structure(i, j), e[k]), alg.bracket(alg.structure(j, k), e[i])),
            alg.bracket(alg.structure(k, i), e[j]),
        )
        if any(r):
            names = (alg.names[i], alg.names[j], alg.names[k])
            raise JacobiViolation(
                f"Jacobi identity fails on {names}: residual {alg.format_vector(r)}",
                triple=names,
                residual=r,
            )
    return alg


def bracket(alg: LieAlgebra, u: Sequence, v: Sequence) -> Vector:
    return alg.bracket(u, v)


@dataclass(frozen=True)
class CentralSeries:
    """g_[1] ⊇ g_[2] ⊇ ...; ``nilpotent`` False means it stalled at ``terms[-1] != 0``."""

    terms: tuple[Subspace, ...]
    nilpotent: bool

    @property
    def dims(self) -> list[int]:
        return [t.dim for t in self.terms]

    @property
    def step(self) -> int | None:
        return len(self.terms) - 1 if self.nilpotent else None


def descending_central_series(alg: LieAlgebra) -> CentralSeries:
    full = Subspace.full(alg.dim)
    terms = [full]
    while True:
        nxt = alg.bracket_span(full, terms[-1])
        if nxt == terms[-1]:
            return CentralSeries(tuple(terms), nilpotent=nxt.is_zero())
        terms.append(nxt)
        if nxt.is_zero():
            return CentralSeries(tuple(terms), nilpotent=True)


def generated_subalgebra(alg: LieAlgebra, gens: Sequence[Sequence]) -> Subspace:
    """Smallest bracket-closed subspace containing ``gens``."""
    if not gens:
        raise InputError("generated_subalgebra needs at least one generator")
    span = Subspace(alg.dim, gens)
    frontier = list(span.basis)
    # bracket new directions against the current span until nothing new appears
    for _ in range(alg.dim + 1):
        new = [alg.bracket(u, v) for u in frontier for v in span.basis]
        grown = span.extend(new)
        if grown == span:
            return span
        frontier = [linalg.vec(v) for v in grown.basis if not span.contains(v)] or list(grown.basis)
        span = grown
    raise AssertionError("span saturation did not terminate")  # pragma: no cover


def guivarch_growth_degree(alg: LieAlgebra) -> int:
    """Q_G = sum of the dimensions of the descending central series."""
    series = descending_central_series(alg)
    if not series.nilpotent:
        raise NonNilpotent(
            f"central series stalls at dimension {series.terms[-1].dim}",
            dims=series.dims,
        )
    return sum(series.dims)
