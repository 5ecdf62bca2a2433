"""Gradings (automorphic dilations diagonal in the given basis).

A grading assigns a degree >= 1 to every basis vector such that
``[X_i, X_j]`` only has components of degree ``deg(i) + deg(j)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

from . import linalg
from .errors import DimensionMismatch, GradingViolation, InputError, IrrationalPower
from .lie import LieAlgebra, descending_central_series, generated_subalgebra, guivarch_growth_degree
from .linalg import Subspace
from .scalars import as_fraction


class Grading:
    def __init__(self, algebra: LieAlgebra, degrees: Sequence | Mapping[str, object]):
        if isinstance(degrees, Mapping):
            missing = set(algebra.names) - set(degrees)
            if missing:
                raise InputError(f"grading misses degrees for {sorted(missing)}")
            degrees = [degrees[nm] for nm in algebra.names]
        degrees = tuple(as_fraction(d) for d in degrees)
        if len(degrees) != algebra.dim:
            raise DimensionMismatch(f"{len(degrees)} degrees for an algebra of dimension {algebra.dim}")
        for nm, d in zip(algebra.names, degrees):
            if d < 1:
                raise GradingViolation(f"degree of {nm} is {d} < 1", name=nm, degree=d)
        self.algebra = algebra
        self.degrees = degrees
        validate_grading(algebra, degrees)

    def levels(self) -> list[Fraction]:
        return sorted(set(self.degrees))

    def W(self, level) -> Subspace:
        level = as_fraction(level)
        n = self.algebra.dim
        return Subspace(n, [linalg.unit_vector(n, i) for i, d in enumerate(self.degrees) if d == level])

    def at_least(self, level) -> Subspace:
        n = self.algebra.dim
        return Subspace(n, [linalg.unit_vector(n, i) for i, d in enumerate(self.degrees) if d >= level])

    def __repr__(self):
        return f"Grading({dict(zip(self.algebra.names, map(str, self.degrees)))})"


def validate_grading(alg: LieAlgebra, degrees: Sequence) -> None:
    """Raise GradingViolation unless [W_a, W_b] ⊆ W_{a+b} on basis pairs."""
    for (i, j), v in alg.table.items():
        target = degrees[i] + degrees[j]
        for k, c in enumerate(v):
            if c and degrees[k] != target:
                raise GradingViolation(
                    f"[{alg.names[i]},{alg.names[j]}] has a {alg.names[k]} component of degree "
                    f"{degrees[k]}, expected {target}",
                    pair=(alg.names[i], alg.names[j]),
                    component=alg.names[k],
                )


def make_grading(alg: LieAlgebra, degrees) -> Grading:
    return Grading(alg, degrees)


def homogeneous_dimension(gr: Grading) -> Fraction:
    return sum(gr.degrees, Fraction(0))


def is_stratified(gr: Grading) -> bool:
    alg = gr.algebra
    w1 = [linalg.unit_vector(alg.dim, i) for i, d in enumerate(gr.degrees) if d == 1]
    if not w1:
        return False
    return generated_subalgebra(alg, w1).dim == alg.dim


@dataclass(frozen=True)
class QuasiEquivalence:
    Q_delta: Fraction
    Q_G: int
    stratified: bool
    dichotomy_ok: bool
    containment_ok: bool


def quasiequivalence_report(gr: Grading) -> QuasiEquivalence:
    """Compare homogeneous dimension against the growth degree."""
    series = descending_central_series(gr.algebra)
    assert series.nilpotent, "a graded algebra must be nilpotent"
    q_delta = homogeneous_dimension(gr)
    q_g = guivarch_growth_degree(gr.algebra)
    strat = is_stratified(gr)
    # g_[n] lies in the sum of the W_lambda with lambda >= n
    containment = all(gr.at_least(n).contains_space(term) for n, term in enumerate(series.terms, start=1))
    ok = q_delta >= q_g and ((q_delta == q_g) == strat)
    assert ok and containment, "Q_delta/Q_G dichotomy failed: implementation bug"
    return QuasiEquivalence(q_delta, q_g, strat, ok, containment)


def _exact_root(x: int, k: int) -> int | None:
    if x < 0:
        return None
    try:
        r = round(x ** (1.0 / k)) if x else 0
    except OverflowError:
        r = 0
    for cand in (r - 1, r, r + 1):
        if cand >= 0 and cand**k == x:
            return cand
    # large integers: bisection
    lo, hi = 0, 1
    while hi**k <= x:
        hi *= 2
    while lo < hi - 1:
        mid = (lo + hi) // 2
        if mid**k <= x:
            lo = mid
        else:
            hi = mid
    return lo if lo**k == x else None


def rational_power(t: Fraction, exponent: Fraction) -> Fraction:
    """t**exponent when it is rational, else IrrationalPower."""
    t, exponent = as_fraction(t), as_fraction(exponent)
    if t <= 0:
        raise IrrationalPower(f"dilation parameter must be positive, got {t}")
    q = exponent.denominator
    num, den = _exact_root(t.numerator, q), _exact_root(t.denominator, q)
    if num is None or den is None:
        raise IrrationalPower(f"{t}^{exponent} is irrational", t=t, exponent=exponent)
    return Fraction(num, den) ** exponent.numerator


def dilate_vector(gr: Grading, t, v: Sequence) -> tuple:
    """delta_t v: scale each coordinate by t**degree."""
    t = as_fraction(t)
    if len(v) != gr.algebra.dim:
        raise DimensionMismatch("vector length does not match algebra dimension")
    return tuple(rational_power(t, d) * c for d, c in zip(gr.degrees, v))
