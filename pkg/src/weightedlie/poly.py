"""Commutative polynomials in n variables with Gaussian-rational coefficients."""

from __future__ import annotations

from fractions import Fraction
from typing import Mapping, Sequence

import numpy as np

from .errors import DimensionMismatch
from .scalars import GaussRational, as_gauss, fmt_fraction


class CommPoly:
    __slots__ = ("nvars", "coeffs")

    def __init__(self, nvars: int, coeffs: Mapping[tuple, object] | None = None):
        self.nvars = nvars
        clean: dict = {}
        for e, c in (coeffs or {}).items():
            e = tuple(int(x) for x in e)
            if len(e) != nvars:
                raise DimensionMismatch(f"exponent {e} for a polynomial in {nvars} variables")
            c = as_gauss(c)
            clean[e] = clean.get(e, GaussRational()) + c
        self.coeffs = {e: c for e, c in clean.items() if c}

    @classmethod
    def var(cls, nvars: int, k: int) -> CommPoly:
        e = [0] * nvars
        e[k] = 1
        return cls(nvars, {tuple(e): 1})

    @classmethod
    def const(cls, nvars: int, c) -> CommPoly:
        return cls(nvars, {(0,) * nvars: c})

    def _lift(self, other):
        if isinstance(other, CommPoly):
            if other.nvars != self.nvars:
                raise DimensionMismatch("polynomials in different numbers of variables")
            return other
        if isinstance(other, (int, Fraction, GaussRational)):
            return CommPoly.const(self.nvars, other)
        return NotImplemented

    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        out = dict(self.coeffs)
        for e, c in other.coeffs.items():
            out[e] = out.get(e, GaussRational()) + c
        return CommPoly(self.nvars, out)

    __radd__ = __add__

    def __neg__(self):
        return CommPoly(self.nvars, {e: -c for e, c in self.coeffs.items()})

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        out: dict = {}
        for a, ca in self.coeffs.items():
            for b, cb in other.coeffs.items():
                m = tuple(x + y for x, y in zip(a, b))
                out[m] = out.get(m, GaussRational()) + ca * cb
        return CommPoly(self.nvars, out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("only nonnegative integer powers")
        result = CommPoly.const(self.nvars, 1)
        for _ in range(k):
            result = result * self
        return result

    def __eq__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return False
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(tuple(sorted(self.coeffs.items())))

    def is_zero(self) -> bool:
        return not self.coeffs

    def degree(self) -> int:
        return max((sum(e) for e in self.coeffs), default=-1)

    def is_real(self) -> bool:
        return all(c.im == 0 for c in self.coeffs.values())

    def conjugate(self) -> CommPoly:
        return CommPoly(self.nvars, {e: c.conjugate() for e, c in self.coeffs.items()})

    def exact(self, point: Sequence) -> GaussRational:
        total = GaussRational()
        for e, c in self.coeffs.items():
            term = c
            for x, p in zip(point, e):
                if p:
                    term = term * (Fraction(x) ** p)
            total = total + term
        return total

    def __call__(self, points):
        """Evaluate at ``points`` of shape (..., nvars); complex result unless real."""
        pts = np.asarray(points, dtype=float)
        if pts.shape[-1] != self.nvars:
            raise DimensionMismatch(f"points with {pts.shape[-1]} coordinates for {self.nvars} variables")
        real = self.is_real()
        out = np.zeros(pts.shape[:-1], dtype=float if real else complex)
        for e, c in self.coeffs.items():
            term = np.ones(pts.shape[:-1])
            for k, p in enumerate(e):
                if p:
                    term = term * pts[..., k] ** p
            out = out + (float(c.re) if real else complex(c)) * term
        return out

    def restrict_line(self, base: Sequence[float], axis: int) -> np.ndarray:
        """Coefficients (low to high) of t -> p(base with coordinate ``axis`` = t); real part."""
        deg = max((e[axis] for e in self.coeffs), default=0)
        out = np.zeros(deg + 1)
        for e, c in self.coeffs.items():
            factor = float(c.re)
            for k, p in enumerate(e):
                if k != axis and p:
                    factor *= base[k] ** p
            out[e[axis]] += factor
        return out

    def __str__(self):
        if not self.coeffs:
            return "0"
        names = ["lambda"] if self.nvars == 1 else [f"lambda{k + 1}" for k in range(self.nvars)]
        parts = []
        for e in sorted(self.coeffs, key=lambda e: (-sum(e), tuple(-x for x in e))):
            c = self.coeffs[e]
            mono = "*".join(nm if p == 1 else f"{nm}^{p}" for nm, p in zip(names, e) if p)
            cs = fmt_fraction(c.re) if c.im == 0 else f"({c})"
            if not mono:
                parts.append(cs)
            elif cs == "1":
                parts.append(mono)
            elif cs == "-1":
                parts.append(f"-{mono}")
            else:
                parts.append(f"{cs}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")

    def __repr__(self):
        return f"CommPoly({self})"
