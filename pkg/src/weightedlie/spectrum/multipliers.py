"""Catalog of spectral multipliers, identified by name and rational parameters.

Accepted spellings::

    zero
    exp(POLY)              exp of a real polynomial in lambda / lambda1..lambdaN
    gauss(c)               exp(-c |lambda|^2)
    bump(a, b, eps[, h])   h * indicator of [a, b] in every coordinate, mollified
                           by a Gaussian of width eps

No user code is ever executed.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np
from scipy.special import erf

from ..errors import InputError
from ..expr import parse_poly
from ..poly import CommPoly
from ..scalars import as_fraction, fmt_fraction

_CALL = re.compile(r"^\s*([a-z]+)\s*\((.*)\)\s*$", re.S)


@dataclass(frozen=True)
class Multiplier:
    name: str
    params: tuple = ()
    exponent: CommPoly | None = field(default=None, compare=False)
    nvars: int = 1

    def __call__(self, lam):
        lam = np.asarray(lam, dtype=float)
        if lam.ndim == 0 or lam.shape[-1] != self.nvars:
            lam = lam[..., None] if self.nvars == 1 else lam
        shape = lam.shape[:-1]
        if self.name == "zero":
            return np.zeros(shape)
        if self.name == "exp":
            return np.exp(self.exponent(lam))
        if self.name == "gauss":
            (c,) = self.params
            return np.exp(-float(c) * np.sum(lam**2, axis=-1))
        if self.name == "bump":
            a, b, eps, h = (float(p) for p in self.params)
            s = np.sqrt(2.0) * eps
            vals = 0.5 * (erf((lam - a) / s) - erf((lam - b) / s))
            return h * np.prod(vals, axis=-1)
        raise AssertionError(self.name)  # pragma: no cover

    def __mul__(self, other):
        return _Product(self, other)

    def describe(self) -> str:
        if self.name == "zero":
            return "zero"
        if self.name == "exp":
            return f"exp({self.exponent})"
        return f"{self.name}({', '.join(fmt_fraction(p) for p in self.params)})"


@dataclass(frozen=True)
class _Product:
    f: Multiplier
    g: Multiplier

    @property
    def nvars(self):
        return self.f.nvars

    def __call__(self, lam):
        return self.f(lam) * self.g(lam)

    def describe(self):
        return f"{self.f.describe()} * {self.g.describe()}"


def multiplier(spec: str, nvars: int = 1) -> Multiplier:
    """Parse a catalog multiplier such as ``"exp(-lambda)"``."""
    spec = spec.strip()
    if spec == "zero":
        return Multiplier("zero", nvars=nvars)
    m = _CALL.match(spec)
    if not m:
        raise InputError(f"unknown multiplier {spec!r}")
    name, body = m.group(1), m.group(2)
    if name == "exp":
        q = parse_poly(body, nvars)
        if not q.is_real():
            raise InputError("exp() needs a real polynomial exponent")
        return Multiplier("exp", (body.strip(),), q, nvars)
    args = [a for a in (x.strip() for x in body.split(",")) if a]
    try:
        params = tuple(as_fraction(a) for a in args)
    except InputError as exc:
        raise InputError(f"multiplier parameters must be rationals: {spec!r}") from exc
    if name == "gauss" and len(params) == 1 and params[0] > 0:
        return Multiplier("gauss", params, nvars=nvars)
    if name == "bump" and len(params) in (3, 4) and params[2] > 0 and params[0] <= params[1]:
        if len(params) == 3:
            params = params + (Fraction(1),)
        return Multiplier("bump", params, nvars=nvars)
    raise InputError(f"bad multiplier {spec!r}")
