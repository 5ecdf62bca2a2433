"""Universal enveloping algebra in PBW normal form.

An element is a finite map from exponent vectors ``e`` to Gaussian-rational
coefficients, standing for ``sum c_e X_1^{e_1} ... X_N^{e_N}`` in the basis
order of the Lie algebra.  Products are straightened with
``X_j X_i = X_i X_j + [X_j, X_i]`` for ``j > i``.
"""

from __future__ import annotations

import sys
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .errors import DimensionMismatch, MismatchedAlgebra, NotADerivation
from .lie import LieAlgebra
from .scalars import GaussRational, as_gauss, fmt_fraction

sys.setrecursionlimit(max(sys.getrecursionlimit(), 20000))

_ONE = 1


class _PBW:
    """Memoized monomial arithmetic for one Lie algebra (rational coefficients)."""

    def __init__(self, alg: LieAlgebra):
        self.alg = alg
        n = alg.dim
        self.n = n
        # brackets[k][j] = [X_k, X_j] as sparse ((l, c), ...)
        integral = all(c.denominator == 1 for v in alg.table.values() for c in v)
        # integer structure constants keep every monomial coefficient an int
        conv = (lambda c: c.numerator) if integral else (lambda c: c)
        self.brackets = [
            [tuple((l, conv(c)) for l, c in enumerate(alg.structure(k, j)) if c) for j in range(n)] for k in range(n)
        ]
        self._gen_cache: dict = {}
        self._mono_cache: dict = {}
        self._adj_cache: dict = {}

    def rmul_gen(self, e: tuple, j: int) -> dict:
        """X^e * X_j in normal form."""
        key = (e, j)
        hit = self._gen_cache.get(key)
        if hit is not None:
            return hit
        last = -1
        for k in range(self.n - 1, -1, -1):
            if e[k]:
                last = k
                break
        if j >= last:
            f = list(e)
            f[j] += 1
            out = {tuple(f): _ONE}
        else:
            k = last
            head = list(e)
            head[k] -= 1
            head = tuple(head)
            out: dict = {}
            # X^head X_k X_j = (X^head X_j) X_k + X^head [X_k, X_j]
            for m, c in self.rmul_gen(head, j).items():
                for m2, c2 in self.rmul_gen(m, k).items():
                    out[m2] = out.get(m2, 0) + c * c2
            for l, c in self.brackets[k][j]:
                for m2, c2 in self.rmul_gen(head, l).items():
                    out[m2] = out.get(m2, 0) + c * c2
            out = {m: c for m, c in out.items() if c}
        self._gen_cache[key] = out
        return out

    def mono_mul(self, a: tuple, b: tuple) -> dict:
        """X^a * X^b, recursing on b with its last generator stripped."""
        key = (a, b)
        hit = self._mono_cache.get(key)
        if hit is not None:
            return hit
        j = -1
        for k in range(self.n - 1, -1, -1):
            if b[k]:
                j = k
                break
        if j < 0:
            out = {a: _ONE}
        else:
            head = list(b)
            head[j] -= 1
            out: dict = {}
            for m, c in self.mono_mul(a, tuple(head)).items():
                for m2, c2 in self.rmul_gen(m, j).items():
                    out[m2] = out.get(m2, 0) + c * c2
            out = {m: c for m, c in out.items() if c}
        self._mono_cache[key] = out
        return out

    def reversed_monomial(self, e: tuple) -> dict:
        """X_N^{e_N} ... X_1^{e_1} in normal form."""
        hit = self._adj_cache.get(e)
        if hit is not None:
            return hit
        cur = {(0,) * self.n: _ONE}
        for j in range(self.n - 1, -1, -1):
            for _ in range(e[j]):
                nxt: dict = {}
                for m, c in cur.items():
                    for m2, c2 in self.rmul_gen(m, j).items():
                        nxt[m2] = nxt.get(m2, 0) + c * c2
                cur = {m: c for m, c in nxt.items() if c}
        self._adj_cache[e] = cur
        return cur


def _pbw(alg: LieAlgebra) -> _PBW:
    ctx = alg.__dict__.get("_pbw")
    if ctx is None:
        ctx = _PBW(alg)
        alg.__dict__["_pbw"] = ctx
    return ctx


def _gauss_mul_frac(c: GaussRational, q) -> GaussRational:
    return GaussRational(c.re * q, c.im * q)


class EnvElement:
    """Element of U(g) in PBW normal form; immutable."""

    __slots__ = ("algebra", "terms")

    def __init__(self, algebra: LieAlgebra, terms: Mapping[tuple, object] | None = None):
        self.algebra = algebra
        clean = {}
        for e, c in (terms or {}).items():
            e = tuple(e)
            if len(e) != algebra.dim:
                raise DimensionMismatch(f"exponent vector {e} in dimension {algebra.dim}")
            c = as_gauss(c)
            if c:
                clean[e] = clean.get(e, GaussRational()) + c
        self.terms = {e: c for e, c in clean.items() if c}

    @classmethod
    def _raw(cls, algebra, terms):
        obj = cls.__new__(cls)
        obj.algebra = algebra
        obj.terms = terms
        return obj

    @classmethod
    def one(cls, algebra: LieAlgebra) -> EnvElement:
        return cls._raw(algebra, {(0,) * algebra.dim: GaussRational(1)})

    @classmethod
    def zero(cls, algebra: LieAlgebra) -> EnvElement:
        return cls._raw(algebra, {})

    @classmethod
    def scalar(cls, algebra: LieAlgebra, c) -> EnvElement:
        return cls(algebra, {(0,) * algebra.dim: c})

    @classmethod
    def generator(cls, algebra: LieAlgebra, i: int) -> EnvElement:
        e = [0] * algebra.dim
        e[i] = 1
        return cls._raw(algebra, {tuple(e): GaussRational(1)})

    @classmethod
    def from_vector(cls, algebra: LieAlgebra, v: Sequence) -> EnvElement:
        terms = {}
        for i, c in enumerate(v):
            if c:
                e = [0] * algebra.dim
                e[i] = 1
                terms[tuple(e)] = c
        return cls(algebra, terms)

    def _check(self, other: EnvElement):
        if other.algebra is not self.algebra and other.algebra != self.algebra:
            raise MismatchedAlgebra("elements live in different enveloping algebras")

    def _lift(self, other):
        if isinstance(other, EnvElement):
            self._check(other)
            return other
        if isinstance(other, (int, Fraction, GaussRational)):
            return EnvElement.scalar(self.algebra, other)
        return NotImplemented

    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = out.get(e)
            s = c if s is None else s + c
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return EnvElement._raw(self.algebra, out)

    __radd__ = __add__

    def __neg__(self):
        return EnvElement._raw(self.algebra, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> EnvElement:
        c = as_gauss(c)
        if not c:
            return EnvElement.zero(self.algebra)
        return EnvElement._raw(self.algebra, {e: v * c for e, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, GaussRational)):
            return self.scale(other)
        if not isinstance(other, EnvElement):
            return NotImplemented
        self._check(other)
        ctx = _pbw(self.algebra)
        acc: dict = {}
        for a, ca in self.terms.items():
            for b, cb in other.terms.items():
                cab = ca * cb
                for m, q in ctx.mono_mul(a, b).items():
                    t = _gauss_mul_frac(cab, q)
                    s = acc.get(m)
                    acc[m] = t if s is None else s + t
        return EnvElement._raw(self.algebra, {m: c for m, c in acc.items() if c})

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction, GaussRational)):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("only nonnegative integer powers")
        result = EnvElement.one(self.algebra)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def adjoint(self) -> EnvElement:
        """Formal adjoint: conjugate-linear antiautomorphism with X -> -X."""
        ctx = _pbw(self.algebra)
        acc: dict = {}
        for e, c in self.terms.items():
            cc = c.conjugate()
            if sum(e) % 2:
                cc = -cc
            for m, q in ctx.reversed_monomial(e).items():
                t = _gauss_mul_frac(cc, q)
                s = acc.get(m)
                acc[m] = t if s is None else s + t
        return EnvElement._raw(self.algebra, {m: c for m, c in acc.items() if c})

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, GaussRational)):
            other = EnvElement.scalar(self.algebra, other)
        if not isinstance(other, EnvElement):
            return NotImplemented
        return self.algebra == other.algebra and self.terms == other.terms

    def __hash__(self):
        return hash(tuple(sorted(self.terms.items(), key=lambda kv: kv[0])))

    def order(self) -> int:
        """Maximal total degree of a monomial (-1 for zero)."""
        return max((sum(e) for e in self.terms), default=-1)

    def monomials(self) -> list[tuple]:
        return sorted(self.terms, key=lambda e: (-sum(e), tuple(-x for x in e)))

    def __str__(self):
        return format_element(self)

    def __repr__(self):
        return f"EnvElement({format_element(self)!r})"


def multiply(d: EnvElement, e: EnvElement) -> EnvElement:
    return d * e


def commutator(d: EnvElement, e: EnvElement) -> EnvElement:
    return d * e - e * d


def adjoint_env(d: EnvElement) -> EnvElement:
    return d.adjoint()


def _format_coeff(c: GaussRational) -> str:
    if c.im == 0:
        return fmt_fraction(c.re)
    if c.re == 0:
        return f"{fmt_fraction(c.im)}*i" if c.im not in (1, -1) else ("i" if c.im == 1 else "-i")
    return f"({c})"


def format_monomial(alg: LieAlgebra, e: Sequence[int]) -> str:
    parts = []
    for nm, p in zip(alg.names, e):
        if p == 1:
            parts.append(nm)
        elif p > 1:
            parts.append(f"{nm}^{p}")
    return "*".join(parts)


def format_element(d: EnvElement) -> str:
    """Canonical text: monomials sorted by descending order, then exponents.

    The output parses back to the same element.
    """
    if not d.terms:
        return "0"
    out = []
    for e in d.monomials():
        c = d.terms[e]
        mono = format_monomial(d.algebra, e)
        neg = c.im == 0 and c.re < 0
        mag = -c if neg else c
        if not mono:
            body = _format_coeff(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{_format_coeff(mag)}*{mono}"
        if out:
            out.append(f" - {body}" if neg else f" + {body}")
        else:
            out.append(f"-{body}" if neg else body)
    return "".join(out)


def check_derivation(alg: LieAlgebra, images: Sequence[Sequence]) -> None:
    """Raise NotADerivation unless J[u,v] = [Ju,v] + [u,Jv] on basis pairs.

    ``images[i]`` is J(X_i) in coordinates.
    """
    n = alg.dim
    if len(images) != n or any(len(v) != n for v in images):
        raise DimensionMismatch("derivation must map each basis vector to a vector of the algebra")

    def J(v):
        out = [Fraction(0)] * n
        for i, c in enumerate(v):
            if c:
                for k, a in enumerate(images[i]):
                    out[k] += c * a
        return tuple(out)

    for i in range(n):
        for j in range(i + 1, n):
            lhs = J(alg.structure(i, j))
            ei, ej = alg.basis_vector(i), alg.basis_vector(j)
            rhs = tuple(a + b for a, b in zip(alg.bracket(images[i], ej), alg.bracket(ei, images[j])))
            if lhs != rhs:
                raise NotADerivation(
                    f"Leibniz rule fails on ({alg.names[i]}, {alg.names[j]})",
                    pair=(alg.names[i], alg.names[j]),
                )


def apply_derivation(images: Sequence[Sequence], d: EnvElement, verify: bool = True) -> EnvElement:
    """Leibniz extension of a derivation of g to U(g)."""
    alg = d.algebra
    if verify:
        check_derivation(alg, images)
    n = alg.dim
    jx = [EnvElement.from_vector(alg, images[i]) for i in range(n)]
    result = EnvElement.zero(alg)
    for e, c in d.terms.items():
        word = [i for i in range(n) for _ in range(e[i])]
        for p, letter in enumerate(word):
            pre = [0] * n
            for i in word[:p]:
                pre[i] += 1
            post = [0] * n
            for i in word[p + 1 :]:
                post[i] += 1
            left = EnvElement._raw(alg, {tuple(pre): GaussRational(1)})
            right = EnvElement._raw(alg, {tuple(post): GaussRational(1)})
            result = result + (left * jx[letter] * right).scale(c)
    return result


def check_invariant(images: Sequence[Sequence], d: EnvElement) -> bool:
    return apply_derivation(images, d).is_zero()


def lift_terms(terms: Iterable[tuple[tuple, GaussRational]], algebra: LieAlgebra) -> EnvElement:
    return EnvElement(algebra, dict(terms))
