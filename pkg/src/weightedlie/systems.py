"""Commuting self-adjoint operator systems and the polynomial constructions
built on them (dominating powers, auxiliary exponents, homogeneous Delta)."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .envelope import EnvElement, apply_derivation, check_invariant, commutator
from .errors import (
    Inhomogeneous,
    InputError,
    NoCommonMultiple,
    NoSuchPower,
    NotCommuting,
    NotSelfAdjoint,
    ValidationError,
)
from .forms import Form, adjoint_form, form_degree, principal_part, realize
from .grading import Grading
from .poly import CommPoly
from .weighted import Contraction

__all__ = [
    "OperatorSystem",
    "SystemAnalysis",
    "analyze_system",
    "check_system",
    "homogeneity_degree",
    "EvenDegree",
    "even_degree_condition",
    "contracted_principal",
    "minimal_dominating_power",
    "build_auxiliary_polynomials",
    "common_multiple",
    "build_homogeneous_delta",
    "apply_derivation",
    "check_invariant",
]


@dataclass(frozen=True)
class OperatorSystem:
    ops: tuple[EnvElement, ...]
    degrees: tuple[Fraction, ...] | None = None
    validated: bool = False

    @property
    def algebra(self):
        return self.ops[0].algebra

    def __len__(self):
        return len(self.ops)


@dataclass
class SystemAnalysis:
    """Every verdict of ``check_system`` without raising."""

    ops: list[EnvElement]
    self_adjoint: list[bool]
    commutators: list[list[EnvElement]]
    degrees: list | None = None
    failures: list = field(default_factory=list)

    @property
    def commuting(self) -> bool:
        return all(c.is_zero() for row in self.commutators for c in row)

    @property
    def valid(self) -> bool:
        return all(self.self_adjoint) and self.commuting


def analyze_system(ops: Sequence[EnvElement], grading: Grading | None = None) -> SystemAnalysis:
    ops = list(ops)
    if not ops:
        raise InputError("a system needs at least one operator")
    n = len(ops)
    sa = [d.adjoint() == d for d in ops]
    zero = EnvElement.zero(ops[0].algebra)
    comm = [[zero] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            c = commutator(ops[i], ops[j])
            comm[i][j] = c
            comm[j][i] = -c
    degrees = None
    if grading is not None:
        degrees = []
        for d in ops:
            try:
                degrees.append(homogeneity_degree(grading, d))
            except Inhomogeneous:
                degrees.append(None)
    return SystemAnalysis(ops, sa, comm, degrees)


def check_system(ops: Sequence[EnvElement], grading: Grading | None = None) -> OperatorSystem:
    """Validate formal self-adjointness and pairwise commutation."""
    a = analyze_system(ops, grading)
    for j, ok in enumerate(a.self_adjoint):
        if not ok:
            raise NotSelfAdjoint(f"operator {j} is not formally self-adjoint", index=j, operator=str(a.ops[j]))
    n = len(a.ops)
    for i in range(n):
        for j in range(i + 1, n):
            if not a.commutators[i][j].is_zero():
                raise NotCommuting(
                    f"operators {i} and {j} do not commute",
                    pair=(i, j),
                    commutator=str(a.commutators[i][j]),
                )
    degrees = None
    if a.degrees is not None and all(d is not None for d in a.degrees):
        degrees = tuple(a.degrees)
    return OperatorSystem(tuple(a.ops), degrees, validated=True)


def homogeneity_degree(gr: Grading, d: EnvElement) -> Fraction:
    """Common graded degree of all PBW monomials of d."""
    if d.algebra != gr.algebra:
        raise ValidationError("grading and operator live on different algebras")
    if d.is_zero():
        raise Inhomogeneous("the zero operator has no homogeneity degree", degrees=())
    degs = {}
    for e in d.terms:
        degs.setdefault(sum((k * w for k, w in zip(e, gr.degrees)), Fraction(0)), e)
    if len(degs) > 1:
        top = sorted(degs, reverse=True)
        raise Inhomogeneous(
            f"monomials of degrees {', '.join(map(str, top))}",
            degrees=tuple(top[:2]),
        )
    return next(iter(degs))


@dataclass(frozen=True)
class EvenDegree:
    """m / w_i in 2N, per generator, over the full basis and over the used letters."""

    degree: Fraction
    per_generator: tuple[bool, ...]
    used: tuple[int, ...]

    @property
    def full(self) -> bool:
        return all(self.per_generator)

    @property
    def used_only(self) -> bool:
        return all(self.per_generator[j] for j in self.used)

    def __bool__(self):
        return self.full


def _even_positive(q: Fraction) -> bool:
    return q.denominator == 1 and q > 0 and q.numerator % 2 == 0


def even_degree_condition(c: Form) -> EvenDegree:
    m = form_degree(c)
    verdicts = tuple(_even_positive(m / w) for w in c.basis.weights)
    return EvenDegree(m, verdicts, tuple(sorted(c.letters())))


def contracted_principal(c: Form, k: Contraction) -> EnvElement:
    """Realization of P + P+ over the contraction, through its induced basis."""
    if len(c.basis) != len(k.source):
        raise ValidationError("form and contraction use different weighted bases")
    p = principal_part(c)
    sym = p + adjoint_form(p)
    return realize(sym.rebase(k.induced_basis))


def minimal_dominating_power(c: Form, b: Form) -> int:
    """Least r with r*deg(c) > deg(b) and r*deg(c)/w_i even for all i."""
    m = form_degree(c)
    mb = form_degree(b) if not b.is_zero() else Fraction(-1)
    weights = c.basis.weights
    # r*m/w_i even for all i is periodic in r with this period
    period = 1
    for w in weights:
        q = m / w
        need = Fraction(2) / q
        period = period * need.numerator // math.gcd(period, need.numerator)
    start = max(1, math.floor(mb / m) + 1)
    for r in range(start, start + period + 1):
        if r * m > mb and all(_even_positive(r * m / w) for w in weights):
            return r
    raise NoSuchPower("no power satisfies the parity constraint", degree=m)  # pragma: no cover


def build_auxiliary_polynomials(p_star: CommPoly) -> list[CommPoly]:
    """[p_0, p_1, ..., p_n] with p_0 = p_* + sum lambda_j^2 + 1, p_k = p_0 + lambda_k."""
    n = p_star.nvars
    lam = [CommPoly.var(n, k) for k in range(n)]
    p0 = p_star + sum((x * x for x in lam), CommPoly.const(n, 0)) + 1
    return [p0] + [p0 + x for x in lam]


def common_multiple(degrees: Sequence) -> int:
    """Least positive integer M with M / r_j a positive integer for all j."""
    degrees = [Fraction(r) for r in degrees]
    if not degrees or any(r <= 0 for r in degrees):
        raise NoCommonMultiple("degrees must be positive", degrees=tuple(degrees))
    # M / (p/q) = M q / p is an integer for coprime p, q iff p | M
    num = 1
    for r in degrees:
        num = num * r.numerator // math.gcd(num, r.numerator)
    return num


def build_homogeneous_delta(sys: OperatorSystem, grading: Grading | None = None) -> tuple[EnvElement, int]:
    """Delta = sum_j L_j^{2M/r_j}; returns (Delta, M)."""
    if sys.degrees is None:
        raise NoCommonMultiple("system has no homogeneity degrees attached")
    M = common_multiple(sys.degrees)
    delta = EnvElement.zero(sys.algebra)
    for op, r in zip(sys.ops, sys.degrees):
        k = Fraction(2 * M) / r
        assert k.denominator == 1
        delta = delta + op ** int(k)
    if grading is not None:
        assert homogeneity_degree(grading, delta) == 2 * M
    return delta, M
