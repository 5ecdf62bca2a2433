"""Exact scalars: rationals (``fractions.Fraction``) and Gaussian rationals."""

from __future__ import annotations

import re
from fractions import Fraction
from numbers import Rational

from .errors import InputError

__all__ = ["Fraction", "GaussRational", "as_fraction", "as_gauss", "fmt_fraction", "I"]

_RATIONAL = re.compile(r"^\s*[-+]?\d+\s*(/\s*\d+)?\s*$")


def as_fraction(value) -> Fraction:
    """Coerce ints, Fractions and ``"p/q"`` strings to ``Fraction``.

    Floats are rejected: every structure constant must be exact.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise InputError(f"not a rational: {value!r}")
    if isinstance(value, (int, Rational)):
        return Fraction(value)
    if isinstance(value, str):
        if not _RATIONAL.match(value):
            raise InputError(f"not a rational (expected p or p/q): {value!r}")
        try:
            return Fraction(re.sub(r"\s", "", value))
        except ZeroDivisionError as exc:
            raise InputError(f"zero denominator in {value!r}") from exc
    raise InputError(f"not an exact rational: {value!r}")


def fmt_fraction(q: Fraction) -> str:
    """Serialize as ``"p/q"`` (``"p"`` when the denominator is 1)."""
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


class GaussRational:
    """Element of Q(i), stored as a pair of Fractions."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = re if type(re) is Fraction else Fraction(re)
        self.im = im if type(im) is Fraction else Fraction(im)

    @staticmethod
    def _coerce(other):
        if isinstance(other, GaussRational):
            return other
        if isinstance(other, (int, Fraction)):
            return GaussRational(other, 0)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return GaussRational(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return GaussRational(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return GaussRational(self.re * other, self.im * other)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return GaussRational(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        n = other.re * other.re + other.im * other.im
        if n == 0:
            raise ZeroDivisionError("GaussRational division by zero")
        return self * GaussRational(other.re / n, -other.im / n)

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other / self

    def __neg__(self):
        return GaussRational(-self.re, -self.im)

    def __pos__(self):
        return self

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("only nonnegative integer powers")
        result, base = GaussRational(1), self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def conjugate(self) -> GaussRational:
        return GaussRational(self.re, -self.im)

    def is_real(self) -> bool:
        return self.im == 0

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return False
        return self.re == other.re and self.im == other.im

    def __hash__(self):
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def __repr__(self):
        return f"GaussRational({self})"

    def __str__(self):
        if self.im == 0:
            return fmt_fraction(self.re)
        im = "i" if self.im == 1 else "-i" if self.im == -1 else f"{fmt_fraction(self.im)}*i"
        if self.re == 0:
            return im
        if im.startswith("-"):
            return f"{fmt_fraction(self.re)}{im}"
        return f"{fmt_fraction(self.re)}+{im}"

    def to_json(self):
        """``"p/q"`` for reals, ``["re", "im"]`` otherwise."""
        if self.im == 0:
            return fmt_fraction(self.re)
        return [fmt_fraction(self.re), fmt_fraction(self.im)]


I = GaussRational(0, 1)


def as_gauss(value) -> GaussRational:
    if isinstance(value, GaussRational):
        return value
    if isinstance(value, (list, tuple)) and len(value) == 2:
        return GaussRational(as_fraction(value[0]), as_fraction(value[1]))
    return GaussRational(as_fraction(value))
