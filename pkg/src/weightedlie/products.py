"""Direct products of Lie algebras, weighted bases and operator systems."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from . import linalg
from .envelope import EnvElement
from .errors import InputError, NotReduced, NotSelfAdjoint
from .forms import Form, form_degree, principal_part
from .lie import LieAlgebra
from .systems import OperatorSystem, check_system, common_multiple
from .weighted import Contraction, WeightedBasis, compute_filtration, contract, is_reduced_strict


@dataclass(frozen=True)
class ProductAlgebra:
    factors: tuple[LieAlgebra, ...]
    total: LieAlgebra
    offsets: tuple[int, ...]

    def embed(self, l: int, v: Sequence) -> tuple:
        out = [Fraction(0)] * self.total.dim
        off = self.offsets[l]
        for i, c in enumerate(v):
            out[off + i] = Fraction(c)
        return tuple(out)


def block_sum(algebras: Sequence[LieAlgebra], names: Sequence[str] | None = None) -> LieAlgebra:
    """Block-diagonal structure constants; cross-factor brackets vanish."""
    n = sum(a.dim for a in algebras)
    table = {}
    off = 0
    for a in algebras:
        for (i, j), v in a.table.items():
            w = [Fraction(0)] * n
            w[off : off + a.dim] = v
            table[(off + i, off + j)] = w
        off += a.dim
    if names is None:
        names = [nm for a in algebras for nm in a.names]
    return LieAlgebra(names, table)


def product(algebras: Sequence[LieAlgebra]) -> ProductAlgebra:
    if len(algebras) < 2:
        raise InputError("a product needs at least two factors")
    flat = [nm for a in algebras for nm in a.names]
    if len(set(flat)) != len(flat):
        names = [f"{nm}_{l + 1}" for l, a in enumerate(algebras) for nm in a.names]
    else:
        names = flat
    offsets, off = [], 0
    for a in algebras:
        offsets.append(off)
        off += a.dim
    return ProductAlgebra(tuple(algebras), block_sum(algebras, names), tuple(offsets))


def permute_table(table: dict, perm: Sequence[int]) -> dict:
    """Structure constants after reordering the basis: new index k <- old perm[k]."""
    inv = {old: new for new, old in enumerate(perm)}
    n = len(perm)
    out = {}
    for (i, j), v in table.items():
        a, b = inv[i], inv[j]
        w = [Fraction(0)] * n
        for k, c in enumerate(v):
            w[inv[k]] = c
        if a > b:
            a, b = b, a
            w = [-c for c in w]
        out[(a, b)] = tuple(w)
    return dict(sorted(out.items()))


@dataclass(frozen=True)
class ConcatenatedBasis:
    basis: WeightedBasis
    filtration_additive: bool
    contraction: Contraction
    factor_contractions: tuple[Contraction, ...]
    functorial: bool


def concat_weighted_bases(pa: ProductAlgebra, bases: Sequence[WeightedBasis]) -> ConcatenatedBasis:
    if len(bases) != len(pa.factors):
        raise InputError("one weighted basis per factor is required")
    for l, b in enumerate(bases):
        if b.algebra != pa.factors[l]:
            raise InputError(f"basis {l} does not live on factor {l}")
        res = is_reduced_strict(b)
        if not res.reduced:
            raise NotReduced(f"factor {l} basis is not reduced at weight {res.weight}", factor=l, weight=res.weight)
    vectors, weights, labels = [], [], []
    for l, b in enumerate(bases):
        vectors += [pa.embed(l, v) for v in b.vectors]
        weights += list(b.weights)
        labels += [pa.total.format_vector(pa.embed(l, v)) for v in b.vectors]
    wb = WeightedBasis(pa.total, vectors, weights, labels)
    assert is_reduced_strict(wb).reduced
    f = compute_filtration(wb)
    factor_f = [compute_filtration(b) for b in bases]
    additive = set(f.jumps) == set().union(*(ff.jumps for ff in factor_f))
    for lam, space in zip(f.jumps, f.spaces):
        parts = []
        for l, ff in enumerate(factor_f):
            parts += [pa.embed(l, v) for v in ff.F(lam).basis]
        additive &= linalg.Subspace(pa.total.dim, parts) == space
    k = contract(wb)
    factor_k = tuple(contract(b) for b in bases)
    # align the product's adapted basis factor by factor, then compare blocks
    def owner(v):
        for l in range(len(pa.factors) - 1, -1, -1):
            if any(v[pa.offsets[l] :]):
                return l
        return 0

    perm = sorted(range(pa.total.dim), key=lambda p: (owner(k.section[p]), p))
    assembled = block_sum([fk.algebra for fk in factor_k], names=[f"e{i}" for i in range(pa.total.dim)])
    functorial = permute_table(k.algebra.table, perm) == assembled.table
    return ConcatenatedBasis(wb, additive, k, factor_k, functorial)


def lift(pa: ProductAlgebra, l: int, d: EnvElement) -> EnvElement:
    """The operator along factor l, re-indexed into U(g_1 + ... + g_k)."""
    if not 0 <= l < len(pa.factors):
        raise InputError(f"no factor {l}")
    if d.algebra != pa.factors[l]:
        raise InputError(f"operator does not live on factor {l}")
    n = pa.total.dim
    off = pa.offsets[l]
    terms = {}
    for e, c in d.terms.items():
        f = [0] * n
        f[off : off + len(e)] = e
        terms[tuple(f)] = c
    return EnvElement(pa.total, terms)


def product_operator(pa: ProductAlgebra, ds: Sequence[EnvElement]) -> EnvElement:
    """sum_l lift(l, D_l)^2 for formally self-adjoint D_l."""
    if len(ds) != len(pa.factors):
        raise InputError("one operator per factor is required")
    total = EnvElement.zero(pa.total)
    for l, d in enumerate(ds):
        if d.adjoint() != d:
            raise NotSelfAdjoint(f"factor {l} operator is not formally self-adjoint", factor=l)
        x = lift(pa, l, d)
        total = total + x * x
    return total


@dataclass(frozen=True)
class ProductForm:
    form: Form
    principal: Form
    rescale: tuple[Fraction, ...]
    degree: Fraction
    additive: bool


def product_form(pa: ProductAlgebra, forms: Sequence[Form]) -> ProductForm:
    """Sum of squared lifted forms after rescaling weights to a common degree.

    Checks principal_part(sum (C_l^x)^2) == sum (P_l^x)^2.
    """
    degrees = [form_degree(c) for c in forms]
    m = Fraction(common_multiple(degrees))
    scales = tuple(m / d for d in degrees)
    rescaled = [c.basis.rescaled(s) for c, s in zip(forms, scales)]
    cat = concat_weighted_bases(pa, rescaled).basis
    offsets, off = [], 0
    for b in rescaled:
        offsets.append(off)
        off += len(b)
    total = Form(cat)
    principal_sum = Form(cat)
    for c, o in zip(forms, offsets):
        lifted = Form(cat, {tuple(a + o for a in alpha): v for alpha, v in c.coeffs.items()})
        p = principal_part(lifted)
        total = total + lifted * lifted
        principal_sum = principal_sum + p * p
    principal = principal_part(total)
    return ProductForm(total, principal, scales, form_degree(total), principal == principal_sum)


def concat_system(pa: ProductAlgebra, systems: Sequence[OperatorSystem]) -> OperatorSystem:
    if len(systems) != len(pa.factors):
        raise InputError("one system per factor is required")
    ops = []
    degrees: list | None = []
    for l, s in enumerate(systems):
        ops += [lift(pa, l, d) for d in s.ops]
        if s.degrees is None or degrees is None:
            degrees = None
        else:
            degrees += list(s.degrees)
    out = check_system(ops)
    return OperatorSystem(out.ops, tuple(degrees) if degrees is not None else None, validated=True)
