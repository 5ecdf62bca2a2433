"""Symbols of operators on R^d and the joint-injectivity test."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from ..envelope import EnvElement
from ..errors import Inhomogeneous, InputError, NonAbelian, NotSelfAdjoint
from ..grading import Grading
from ..poly import CommPoly
from ..scalars import GaussRational, I
from ..systems import OperatorSystem, homogeneity_degree


class SymbolPoly(CommPoly):
    """Symbol p(xi) of an operator on R^d (variables xi_1..xi_d)."""

    __slots__ = ()

    @property
    def real_flag(self) -> bool:
        return self.is_real()

    def __str__(self):
        return super().__str__().replace("lambda", "xi")


_I_POWERS = (GaussRational(1), I, GaussRational(-1), -I)


def symbol(d: EnvElement) -> SymbolPoly:
    """X^e -> (i xi)^e, coefficient-wise."""
    alg = d.algebra
    if not alg.is_abelian():
        raise NonAbelian(f"symbol() needs an abelian algebra, got {alg!r}")
    return SymbolPoly(alg.dim, {e: c * _I_POWERS[sum(e) % 4] for e, c in d.terms.items()})


def as_symbols(system) -> list[CommPoly]:
    """Accept an OperatorSystem, a list of EnvElements, or a list of polynomials."""
    if isinstance(system, OperatorSystem):
        system = system.ops
    if isinstance(system, (EnvElement, CommPoly)):
        system = [system]
    out = []
    for op in system:
        out.append(symbol(op) if isinstance(op, EnvElement) else op)
    if len({p.nvars for p in out}) != 1:
        raise InputError("symbols must share the same number of variables")
    return out


def _check_real(symbols):
    for p in symbols:
        if not p.is_real():
            raise NotSelfAdjoint(f"symbol {p} is not real-valued; the operator is not self-adjoint", symbol=str(p))


@dataclass(frozen=True)
class InjectivityVerdict:
    verdict: str  # "injective" | "not_injective" | "inconclusive"
    min_value: float
    tolerance: float
    samples: int
    witness: tuple | None = None

    @property
    def injective(self) -> bool:
        return self.verdict == "injective"


def _sphere_points(d: int, resolution: int, seed: int) -> np.ndarray:
    if d == 1:
        return np.array([[1.0], [-1.0]])
    if d == 2:
        th = np.linspace(0, 2 * np.pi, resolution, endpoint=False)
        return np.stack([np.cos(th), np.sin(th)], axis=-1)
    rng = np.random.Generator(np.random.Philox(seed))
    pts = rng.standard_normal((resolution, d))
    pts = np.concatenate([pts, np.eye(d), -np.eye(d)])
    return pts / np.linalg.norm(pts, axis=1, keepdims=True)


def _exact_candidates(d: int):
    """Small integer points, simplest first."""
    span = range(-2, 3) if d <= 4 else range(-1, 2)
    pts = [pt for pt in itertools.product(span, repeat=d) if any(pt)]
    pts.sort(key=lambda pt: (max(map(abs, pt)), sum(map(abs, pt)), sum(x < 0 for x in pt), pt))
    for pt in pts:
        yield tuple(Fraction(x) for x in pt)


def abelian_joint_injectivity(
    ops: Sequence[EnvElement] | OperatorSystem,
    grading: Grading | None = None,
    resolution: int = 720,
    tol: float = 1e-9,
    seed: int = 0,
) -> InjectivityVerdict:
    """Look for common zeros of the symbols on the homogeneous unit sphere.

    A common zero at a rational point (found exactly) gives a negative verdict
    with a witness; a strictly positive sampled minimum gives a positive one.
    """
    if isinstance(ops, OperatorSystem):
        ops = ops.ops
    ops = list(ops)
    alg = ops[0].algebra
    if not alg.is_abelian():
        raise NonAbelian("joint injectivity is only decided on abelian algebras")
    grading = grading or Grading(alg, [1] * alg.dim)
    for op in ops:
        homogeneity_degree(grading, op)  # raises Inhomogeneous
    syms = [symbol(op) for op in ops]
    d = alg.dim
    for pt in _exact_candidates(d):
        if all(not p.exact(pt) for p in syms):
            return InjectivityVerdict("not_injective", 0.0, tol, 0, witness=pt)
    u = _sphere_points(d, resolution, seed)
    degs = np.array([float(x) for x in grading.degrees])
    xi = np.sign(u) * np.abs(u) ** degs
    total = sum(np.abs(p(xi)) ** 2 for p in syms)
    m = float(np.min(total))
    verdict = "injective" if m > tol else "inconclusive"
    return InjectivityVerdict(verdict, m, tol, len(xi))
