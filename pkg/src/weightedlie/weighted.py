"""Weighted bases, their filtrations, reducedness and the contraction.

A weighted basis is a list of linearly independent generators, each with
a rational weight >= 1.  Left-normed brackets of total weight <= lam
span F_lam; the contraction is the graded algebra of F_lam / F_lam^-.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from . import linalg
from .errors import InputError, LinearDependence, NotGenerating, NotReduced
from .grading import Grading
from .lie import LieAlgebra, generated_subalgebra
from .linalg import Subspace, Vector
from .scalars import as_fraction


class WeightedBasis:
    def __init__(self, algebra: LieAlgebra, vectors: Sequence[Sequence], weights: Sequence, labels: Sequence[str] | None = None):
        vectors = [linalg.vec(v) for v in vectors]
        weights = [as_fraction(w) for w in weights]
        if not vectors:
            raise InputError("a weighted basis needs at least one element")
        if len(vectors) != len(weights):
            raise InputError(f"{len(vectors)} vectors but {len(weights)} weights")
        for v in vectors:
            if len(v) != algebra.dim:
                raise InputError(f"vector of length {len(v)} in an algebra of dimension {algebra.dim}")
        for w in weights:
            if w < 1:
                raise InputError(f"weights must be >= 1, got {w}")
        if linalg.rank(vectors, algebra.dim) != len(vectors):
            raise LinearDependence("weighted basis elements are linearly dependent")
        if generated_subalgebra(algebra, vectors).dim != algebra.dim:
            raise NotGenerating("weighted basis does not generate the algebra")
        self.algebra = algebra
        self.vectors: tuple[Vector, ...] = tuple(vectors)
        self.weights: tuple[Fraction, ...] = tuple(weights)
        self.labels = tuple(labels) if labels is not None else tuple(algebra.format_vector(v) for v in vectors)

    @classmethod
    def from_names(cls, algebra: LieAlgebra, names: Sequence[str], weights: Sequence) -> WeightedBasis:
        return cls(algebra, [algebra.basis_vector(algebra.index(nm)) for nm in names], weights, labels=names)

    def __len__(self):
        return len(self.vectors)

    def subset(self, indices: Sequence[int]) -> WeightedBasis:
        return WeightedBasis(
            self.algebra,
            [self.vectors[i] for i in indices],
            [self.weights[i] for i in indices],
            labels=[self.labels[i] for i in indices],
        )

    def rescaled(self, factor) -> WeightedBasis:
        factor = as_fraction(factor)
        return WeightedBasis(self.algebra, self.vectors, [w * factor for w in self.weights], self.labels)

    def __repr__(self):
        items = ", ".join(f"{lb}:{w}" for lb, w in zip(self.labels, self.weights))
        return f"WeightedBasis({items})"


@dataclass(frozen=True)
class Filtration:
    """Jump weights lam_1 < ... < lam_k with F_{lam_1} ⊊ ... ⊊ F_{lam_k} = g."""

    jumps: tuple[Fraction, ...]
    spaces: tuple[Subspace, ...]

    @property
    def ambient_dim(self) -> int:
        return self.spaces[-1].ambient_dim

    @property
    def dims(self) -> list[int]:
        return [s.dim for s in self.spaces]

    def F(self, level) -> Subspace:
        level = as_fraction(level)
        out = Subspace(self.ambient_dim)
        for lam, sp in zip(self.jumps, self.spaces):
            if lam <= level:
                out = sp
        return out

    def F_minus(self, level) -> Subspace:
        level = as_fraction(level)
        out = Subspace(self.ambient_dim)
        for lam, sp in zip(self.jumps, self.spaces):
            if lam < level:
                out = sp
        return out

    @property
    def graded_dims(self) -> list[int]:
        """dim W_lam for each jump."""
        prev = 0
        out = []
        for d in self.dims:
            out.append(d - prev)
            prev = d
        return out


def compute_filtration(wb: WeightedBasis) -> Filtration:
    """Breadth-first over weights of left-normed brackets A_[alpha].

    Brackets of one exact weight are kept as a span; bracketing on the right
    by A_j is linear, so a basis of that span is enough to continue.
    """
    alg = wb.algebra
    n = alg.dim
    cap = n * max(wb.weights)
    pending: dict[Fraction, list[Vector]] = {}
    for v, w in zip(wb.vectors, wb.weights):
        pending.setdefault(w, []).append(v)
    heap = list(pending)
    heapq.heapify(heap)
    current = Subspace(n)
    jumps: list[Fraction] = []
    spaces: list[Subspace] = []
    while heap:
        lam = heapq.heappop(heap)
        layer = Subspace(n, pending.pop(lam))
        if layer.is_zero():
            continue
        grown = current + layer
        if grown != current:
            jumps.append(lam)
            spaces.append(grown)
            current = grown
        if current.dim == n:
            break
        if lam > cap:
            raise AssertionError("filtration did not stabilize within the length cap")  # pragma: no cover
        for u in layer.basis:
            for a, w in zip(wb.vectors, wb.weights):
                b = alg.bracket(u, a)
                if any(b):
                    nu = lam + w
                    if nu not in pending:
                        pending[nu] = []
                        heapq.heappush(heap, nu)
                    pending[nu].append(b)
    assert current.dim == n, "weighted basis does not generate"
    return Filtration(tuple(jumps), tuple(spaces))


@dataclass(frozen=True)
class StrictReducedness:
    reduced: bool
    weight: Fraction | None = None
    witness: Vector | None = None
    # coefficients of the witness over the weight-lam elements (index -> coeff)
    combination: dict = field(default_factory=dict)

    def __bool__(self):
        return self.reduced


def is_reduced_strict(wb: WeightedBasis, f: Filtration | None = None) -> StrictReducedness:
    """Span{A_j : w_j = lam} ∩ F_lam^- = 0 for every lam."""
    f = f or compute_filtration(wb)
    n = wb.algebra.dim
    for lam in sorted(set(wb.weights)):
        idx = [j for j, w in enumerate(wb.weights) if w == lam]
        level = Subspace(n, [wb.vectors[j] for j in idx])
        meet = level.intersection(f.F_minus(lam))
        if not meet.is_zero():
            witness = meet.basis[0]
            coeffs = linalg.solve([wb.vectors[j] for j in idx], witness)
            combo = {j: c for j, c in zip(idx, coeffs) if c}
            return StrictReducedness(False, lam, witness, combo)
    return StrictReducedness(True)


def is_reduced_weak(wb: WeightedBasis, f: Filtration | None = None) -> bool:
    """Older, weaker notion: only A_j ∉ F_{w_j}^- is required."""
    f = f or compute_filtration(wb)
    return all(not f.F_minus(w).contains(v) for v, w in zip(wb.vectors, wb.weights))


def reduce_basis(wb: WeightedBasis) -> WeightedBasis:
    """Drop elements until strictly reduced, keeping the filtration.

    Within each weight, an element is kept iff it is independent of
    F_lam^- plus the already kept elements of that weight (earlier index wins).
    """
    f = compute_filtration(wb)
    n = wb.algebra.dim
    keep: list[int] = []
    for lam in sorted(set(wb.weights)):
        span = f.F_minus(lam)
        for j, (v, w) in enumerate(zip(wb.vectors, wb.weights)):
            if w != lam:
                continue
            if not span.contains(v):
                keep.append(j)
                span = span.extend([v])
    keep.sort()
    if len(keep) == len(wb):
        return wb
    out = wb.subset(keep)
    assert compute_filtration(out) == f, "reduction changed the filtration"
    assert is_reduced_strict(out).reduced
    return out


@dataclass(frozen=True)
class Contraction:
    """The graded algebra g_* with its adapted basis and the section used to build it.

    ``section`` holds the adapted linear basis of g as columns in the original
    coordinates; ``levels[k]`` is the filtration level of column k.
    Basis vector k of ``algebra`` is the class of ``section[k]``.
    """

    algebra: LieAlgebra
    grading: Grading
    section: tuple[Vector, ...]
    levels: tuple[Fraction, ...]
    induced_basis: WeightedBasis
    source: WeightedBasis
    filtration: Filtration

    @property
    def homogeneous_dimension(self) -> Fraction:
        return sum(self.levels, Fraction(0))


def _contraction_names(wb: WeightedBasis, section, origin) -> list[str]:
    alg = wb.algebra
    names = []
    for k, v in enumerate(section):
        nz = [i for i, c in enumerate(v) if c]
        kind, j = origin[k]
        if len(nz) == 1 and v[nz[0]] == 1:
            nm = alg.names[nz[0]]
        elif kind == "A":
            nm = f"A{j + 1}"
        else:
            nm = f"W{k + 1}"
        base, s = nm, 1
        while nm in names:
            s += 1
            nm = f"{base}_{s}"
        names.append(nm)
    return names


def contract(wb: WeightedBasis) -> Contraction:
    res = is_reduced_strict(wb)
    if not res.reduced:
        raise NotReduced(
            f"weighted basis is not reduced at weight {res.weight}",
            weight=res.weight,
            witness=res.witness,
        )
    alg = wb.algebra
    n = alg.dim
    f = compute_filtration(wb)
    section: list[Vector] = []
    levels: list[Fraction] = []
    origin: list[tuple[str, int]] = []
    induced_pos: dict[int, int] = {}
    for lam, space in zip(f.jumps, f.spaces):
        span = f.F_minus(lam)
        for j, (v, w) in enumerate(zip(wb.vectors, wb.weights)):
            if w == lam:
                assert not span.contains(v)
                induced_pos[j] = len(section)
                section.append(v)
                levels.append(lam)
                origin.append(("A", j))
                span = span.extend([v])
        for row in space.basis:
            if not span.contains(row):
                section.append(linalg.vec(row))
                levels.append(lam)
                origin.append(("W", len(section) - 1))
                span = span.extend([row])
        assert span == space
    assert len(section) == n
    table = {}
    for p in range(n):
        for q in range(p + 1, n):
            b = alg.bracket(section[p], section[q])
            if not any(b):
                continue
            coords = linalg.solve(section, b)
            target = levels[p] + levels[q]
            graded = [c if levels[k] == target else Fraction(0) for k, c in enumerate(coords)]
            # the bracket lies in F_{lam+mu}: no components above the target level
            assert all(not c or levels[k] <= target for k, c in enumerate(coords))
            if any(graded):
                table[(p, q)] = graded
    names = _contraction_names(wb, section, origin)
    galg = LieAlgebra(names, table)
    grading = Grading(galg, levels)
    induced = WeightedBasis(
        galg,
        [galg.basis_vector(induced_pos[j]) for j in range(len(wb))],
        wb.weights,
        labels=[names[induced_pos[j]] for j in range(len(wb))],
    )
    assert compute_filtration(induced).jumps == f.jumps
    assert is_reduced_strict(induced).reduced
    return Contraction(galg, grading, tuple(section), tuple(levels), induced, wb, f)


def structure_in_basis(alg: LieAlgebra, columns: Sequence[Vector]) -> dict[tuple[int, int], Vector]:
    """Structure constants of ``alg`` rewritten in a new linear basis."""
    n = alg.dim
    table = {}
    for p in range(n):
        for q in range(p + 1, n):
            b = alg.bracket(columns[p], columns[q])
            if any(b):
                table[(p, q)] = linalg.solve(columns, b)
    return table


def is_canonically_isomorphic(k: Contraction) -> bool:
    """True iff g written in the adapted basis has the contraction's constants."""
    return structure_in_basis(k.source.algebra, k.section) == k.algebra.table
