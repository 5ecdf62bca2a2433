"""Forms: noncommutative polynomials over a weighted basis.

A form maps words ``alpha`` (tuples of 0-based letter indices) to
Gaussian-rational coefficients.  Letter ``j`` stands for the basis element
``A_j`` of weight ``w_j``; the weight of a word is the sum of its letters'
weights.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Mapping

from .envelope import EnvElement
from .errors import MismatchedAlgebra, ZeroForm
from .scalars import GaussRational, as_gauss, fmt_fraction
from .weighted import WeightedBasis


def word_length(alpha: tuple) -> int:
    return len(alpha)


def word_weight(alpha: tuple, weights) -> Fraction:
    return sum((weights[a] for a in alpha), Fraction(0))


def reverse_word(alpha: tuple) -> tuple:
    return tuple(reversed(alpha))


class Form:
    __slots__ = ("basis", "coeffs")

    def __init__(self, basis: WeightedBasis, coeffs: Mapping[tuple, object] | None = None):
        self.basis = basis
        d = len(basis)
        clean: dict = {}
        for alpha, c in (coeffs or {}).items():
            alpha = tuple(alpha)
            if any(not 0 <= a < d for a in alpha):
                raise ValueError(f"word {alpha} uses letters outside 0..{d - 1}")
            c = as_gauss(c)
            clean[alpha] = clean.get(alpha, GaussRational()) + c
        self.coeffs = {a: c for a, c in clean.items() if c}

    @classmethod
    def letter(cls, basis: WeightedBasis, j: int) -> Form:
        return cls(basis, {(j,): 1})

    @classmethod
    def scalar(cls, basis: WeightedBasis, c) -> Form:
        return cls(basis, {(): c})

    def _lift(self, other):
        if isinstance(other, Form):
            if other.basis is not self.basis:
                raise MismatchedAlgebra("forms over different weighted bases")
            return other
        if isinstance(other, (int, Fraction, GaussRational)):
            return Form.scalar(self.basis, other)
        return NotImplemented

    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        out = dict(self.coeffs)
        for a, c in other.coeffs.items():
            out[a] = out.get(a, GaussRational()) + c
        return Form(self.basis, out)

    __radd__ = __add__

    def __neg__(self):
        return Form(self.basis, {a: -c for a, c in self.coeffs.items()})

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
                out[a + b] = out.get(a + b, GaussRational()) + ca * cb
        return Form(self.basis, out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        result = Form.scalar(self.basis, 1)
        for _ in range(k):
            result = result * self
        return result

    def __eq__(self, other):
        return isinstance(other, Form) and other.basis is self.basis and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(tuple(sorted(self.coeffs.items())))

    def is_zero(self) -> bool:
        return not self.coeffs

    def letters(self) -> set[int]:
        return {a for alpha in self.coeffs for a in alpha}

    def rebase(self, basis: WeightedBasis) -> Form:
        """Same coefficients over another basis with the same number of letters."""
        if len(basis) != len(self.basis):
            raise MismatchedAlgebra("rebase needs a basis with the same number of elements")
        return Form(basis, self.coeffs)

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        labels = self.basis.labels
        for alpha in sorted(self.coeffs, key=lambda a: (-len(a), a)):
            c = self.coeffs[alpha]
            word = "*".join(labels[a] if labels[a].isidentifier() else f"({labels[a]})" for a in alpha)
            cs = fmt_fraction(c.re) if c.im == 0 else f"({c})"
            if not word:
                parts.append(cs)
            elif cs == "1":
                parts.append(word)
            elif cs == "-1":
                parts.append(f"-{word}")
            else:
                parts.append(f"{cs}*{word}")
        return " + ".join(parts).replace("+ -", "- ")

    def __repr__(self):
        return f"Form({self})"


def form_degree(c: Form) -> Fraction:
    if c.is_zero():
        raise ZeroForm("the zero form has no degree")
    w = c.basis.weights
    return max(word_weight(a, w) for a in c.coeffs)


def principal_part(c: Form) -> Form:
    m = form_degree(c)
    w = c.basis.weights
    return Form(c.basis, {a: v for a, v in c.coeffs.items() if word_weight(a, w) == m})


def is_homogeneous_form(c: Form) -> bool:
    return principal_part(c) == c


def adjoint_form(c: Form) -> Form:
    """C+(alpha) = (-1)^|alpha| conj(C(reversed alpha))."""
    out = {}
    for alpha, v in c.coeffs.items():
        v = v.conjugate()
        out[reverse_word(alpha)] = -v if len(alpha) % 2 else v
    return Form(c.basis, out)


def realize(c: Form) -> EnvElement:
    """sum_alpha C(alpha) A_{alpha_1} ... A_{alpha_k} in PBW normal form."""
    alg = c.basis.algebra
    gens = [EnvElement.from_vector(alg, v) for v in c.basis.vectors]
    cache: dict[tuple, EnvElement] = {(): EnvElement.one(alg)}

    def word(alpha):
        hit = cache.get(alpha)
        if hit is None:
            hit = word(alpha[:-1]) * gens[alpha[-1]]
            cache[alpha] = hit
        return hit

    total = EnvElement.zero(alg)
    for alpha, v in c.coeffs.items():
        total = total + word(alpha).scale(v)
    return total
