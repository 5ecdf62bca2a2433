"""Acceptance criteria 1-12.

Each test records one PASS/FAIL line (shown in the terminal summary) and
fails if its check or its runtime limit fails.

    python3 -m pytest tests/test_acceptance.py
"""

import math
import random
import sys
import time
from contextlib import contextmanager
from fractions import Fraction

import numpy as np
import pytest

from weightedlie import WeightedBasis, catalog_get, dump_algebra, load_algebra
from weightedlie.catalog import N23_SYSTEM_3, N23_SYSTEM_4, SO2_DERIVATION
from weightedlie.envelope import check_invariant, commutator
from weightedlie.errors import NotCommuting
from weightedlie.expr import parse_element, parse_vector
from weightedlie.forms import Form, adjoint_form, realize
from weightedlie.grading import make_grading, quasiequivalence_report
from weightedlie.lie import descending_central_series, guivarch_growth_degree
from weightedlie.products import concat_weighted_bases, permute_table, product
from weightedlie.spectrum import (
    SamplerConfig,
    abelian_joint_injectivity,
    box_masses,
    convolution_identity_check,
    multiplier,
    plancherel_check,
    polar_decomposition_check,
    pushforward_change_of_generators,
    spectrum_sample,
    symbol,
)
from weightedlie.expr import parse_poly
from weightedlie.systems import build_homogeneous_delta, check_system, homogeneity_degree
from weightedlie.weighted import compute_filtration, contract, is_reduced_strict, is_reduced_weak

import oracles
from conftest import SMALL, as_pairs, element_from_words

RESULTS: dict[int, str] = {}


@contextmanager
def criterion(num: int, title: str, limit: float):
    t0 = time.perf_counter()
    status, note = "FAIL", ""
    try:
        yield
        status = "PASS"
    except Exception as exc:
        note = f" [{type(exc).__name__}: {str(exc).splitlines()[0][:120]}]"
        raise
    finally:
        elapsed = time.perf_counter() - t0
        if status == "PASS" and elapsed >= limit:
            status, note = "FAIL", " [over time limit]"
        RESULTS[num] = f"criterion {num:2d}: {status}  {title} ({elapsed:.2f}s, limit {limit:g}s){note}"
        print(RESULTS[num])
    if status != "PASS":
        pytest.fail(RESULTS[num])


def n23():
    return catalog_get("n23").lie_algebra()


def test_01_n23_structure():
    with criterion(1, "n23 structural suite", 1.0):
        alg = n23()
        series = descending_central_series(alg)
        assert list(series.dims) == [5, 3, 2, 0]
        assert oracles.central_series_dims(alg) == [5, 3, 2, 0]
        assert guivarch_growth_degree(alg) == 10 == oracles.growth_degree(alg)
        q = quasiequivalence_report(make_grading(alg, [1, 1, 2, 3, 3]))
        assert q.Q_delta == 10 and q.Q_G == 10
        assert q.stratified and q.dichotomy_ok


def test_02_footnote_basis():
    with criterion(2, "footnote-basis entry: weakly but not strictly reduced", 1.0):
        alg = n23()
        vecs = [parse_vector(e, alg) for e in ["X1", "X2", "Y+T1", "T1", "T2"]]
        wb = WeightedBasis(alg, vecs, [1, 1, 3, 3, 3])
        assert is_reduced_weak(wb)
        res = is_reduced_strict(wb)
        assert not res.reduced and res.weight == 3
        y = parse_vector("Y", alg)
        # witness is a nonzero multiple of Y
        k = next(i for i, c in enumerate(y) if c)
        assert res.witness[k] != 0
        assert all(c * res.witness[k] == w * y[k] for c, w in zip(y, res.witness))
        assert not oracles.strictly_reduced(alg, vecs, [1, 1, 3, 3, 3])


def test_03_operator_systems():
    with criterion(3, "n23 operator systems: commuting, self-adjoint, degrees, SO2 invariance", 5.0):
        alg = n23()
        gr = make_grading(alg, [1, 1, 2, 3, 3])
        so2 = [parse_vector(SO2_DERIVATION.get(nm, "0"), alg) for nm in alg.names]
        s3 = check_system([parse_element(t, alg) for t in N23_SYSTEM_3], gr)
        s4 = check_system([parse_element(t, alg) for t in N23_SYSTEM_4], gr)
        assert s3.degrees == (2, 4, 6) and s4.degrees == (2, 4, 3, 3)
        # independent word-rewriting check of the commutators
        for sys_ in (s3, s4):
            for a in sys_.ops:
                for b in sys_.ops:
                    ab = oracles.naive_normal_form(alg, oracles.word_product(_words(a), _words(b)))
                    ba = oracles.naive_normal_form(alg, oracles.word_product(_words(b), _words(a)))
                    assert ab == ba
        assert [check_invariant(so2, d) for d in s3.ops] == [True, True, True]
        assert check_invariant(so2, parse_element("-i*T1", alg)) is False
        with pytest.raises(NotCommuting):
            check_system([parse_element("X1^2", alg), parse_element("X2^2", alg)])
        assert not commutator(parse_element("X1^2", alg), parse_element("X2^2", alg)).is_zero()


def _words(d):
    """PBW element -> {word: (re, im)} with letters in ascending order."""
    return {tuple(k for k, m in enumerate(e) for _ in range(m)): (c.re, c.im) for e, c in d.terms.items()}


GRADED = ["n23", "h1", "h2", "h3", "abelian:3", "n23*h1", "h1*abelian:1"]


def test_04_contractions():
    with criterion(4, "contraction suite: sl2 -> h1, graded algebras fixed, products functorial", 4.0):
        sl2 = catalog_get("sl2").lie_algebra()
        k = contract(WeightedBasis.from_names(sl2, ["E", "F"], [1, 1]))
        assert k.algebra.table == catalog_get("h1").lie_algebra().table
        assert [str(x) for x in k.levels] == ["1", "1", "2"]
        for name in GRADED:
            t0 = time.perf_counter()
            e = catalog_get(name)
            alg = e.lie_algebra()
            wb = WeightedBasis(alg, [parse_vector(b, alg) for b in e.basis], e.weights)
            kk = contract(wb)
            # the adapted basis is the coordinate basis, listed by level
            perm = []
            for col in kk.section:
                (p,) = [i for i, c in enumerate(col) if c]
                assert col[p] == 1, name
                perm.append(p)
            want = permute_table(alg.table, perm)
            assert {k: tuple(v) for k, v in kk.algebra.table.items()} == want, name
            assert oracles.jacobi_holds(kk.algebra)
            make_grading(kk.algebra, kk.levels)
            assert time.perf_counter() - t0 < 1.0, name
        assert oracles.jacobi_holds(k.algebra)
        make_grading(k.algebra, k.levels)
        pairs = [("sl2", "abelian:1"), ("sl2", "sl2"), ("n23", "h1"), ("h2", "sl2")]
        for a, b in pairs:
            t0 = time.perf_counter()
            fa, fb = catalog_get(a), catalog_get(b)
            A, B = fa.lie_algebra(), fb.lie_algebra()
            ba = WeightedBasis(A, [parse_vector(x, A) for x in fa.basis], fa.weights)
            bb = WeightedBasis(B, [parse_vector(x, B) for x in fb.basis], fb.weights)
            cb = concat_weighted_bases(product([A, B]), [ba, bb])
            assert cb.functorial and cb.filtration_additive, (a, b)
            assert oracles.jacobi_holds(cb.contraction.algebra)
            assert time.perf_counter() - t0 < 1.0, (a, b)


def _random_terms(rng, dim, max_terms=3, max_len=3, height=10):
    out = {}
    for _ in range(rng.randint(1, max_terms)):
        w = tuple(rng.randrange(dim) for _ in range(rng.randint(0, max_len)))
        re, im = rng.randint(-height, height), rng.randint(-height, height)
        a = out.get(w, (0, 0))
        out[w] = (a[0] + re, a[1] + im)
    return out


def test_05_pbw_properties():
    with criterion(5, "PBW property suite, 1000 random cases", 30.0):
        rng = random.Random(20261014)
        algebras = {nm: catalog_get(nm).lie_algebra() for nm in SMALL}
        for case in range(1000):
            nm = rng.choice(SMALL)
            alg = algebras[nm]
            assert alg.dim <= 5
            a, b, c = (_random_terms(rng, alg.dim) for _ in range(3))
            A, B, C = (element_from_words(alg, t) for t in (a, b, c))
            assert as_pairs(A) == oracles.naive_normal_form(alg, a)
            assert (A * B) * C == A * (B * C)
            assert A.adjoint().adjoint() == A
            assert (A * B).adjoint() == B.adjoint() * A.adjoint()
            basis = WeightedBasis.from_names(alg, alg.names, [1] * alg.dim)
            form = Form(basis, {w: complex_pair(v) for w, v in a.items()})
            assert realize(adjoint_form(form)) == realize(form).adjoint()
            # second basis order: zero and commutativity verdicts agree
            perm = list(range(alg.dim))
            rng.shuffle(perm)
            other = load_algebra(dict(dump_algebra(alg), names=[alg.names[p] for p in perm]))
            inv = {p: k for k, p in enumerate(perm)}
            relabel = lambda t: {tuple(inv[x] for x in w): v for w, v in t.items()}  # noqa: E731
            if rng.random() < 0.3:
                b = oracles.word_product(a, a)  # B = A^2 commutes with A
                B = element_from_words(alg, b)
            A2, B2 = element_from_words(other, relabel(a)), element_from_words(other, relabel(b))
            assert A.is_zero() == A2.is_zero()
            assert commutator(A, B).is_zero() == commutator(A2, B2).is_zero()
            assert (A - A).is_zero() and (A2 - A2).is_zero()


def complex_pair(v):
    from weightedlie.scalars import GaussRational

    return GaussRational(*v)


def test_06_abelian_plancherel():
    with criterion(6, "abelian Plancherel identity, f = exp(-lambda), L = -d^2", 5.0):
        alg = catalog_get("abelian:1").lie_algebra()
        res = plancherel_check([parse_element("-X1^2", alg)], multiplier("exp(-lambda)"), tol=1e-6)
        exact = 1 / (2 * math.sqrt(2 * math.pi))
        assert math.isclose(exact, oracles.plancherel_gauss(1.0), rel_tol=1e-15)
        assert abs(res.lhs - exact) / exact < 1e-6
        assert abs(res.rhs - exact) / exact < 1e-6
        assert res.rel_err < 1e-6


def test_07_polar_decomposition():
    with criterion(7, "polar decomposition: sigma(eps_2 [0,1]) / sigma([0,1]) = 2", 5.0):
        alg = catalog_get("abelian:1").lie_algebra()
        res = polar_decomposition_check([parse_element("-X1^2", alg)], make_grading(alg, [1]), [0], [1], 2.0)
        assert res.target == 2.0
        assert abs(res.ratio - 2.0) < 1e-4
        assert math.isclose(oracles.laplacian_mass(0, 4) / oracles.laplacian_mass(0, 1), 2.0)


def test_08_pushforward():
    with criterion(8, "pushforward of -i d under lambda^2 matches -d^2, 20 boxes, 1e6 samples, 2%", 30.0):
        alg = catalog_get("abelian:1").lie_algebra()
        edges = [np.linspace(0.0, 4.0, 21)]
        der = spectrum_sample([parse_element("-i*X1", alg)], SamplerConfig(samples=10**6, radius=2.0, seed=11))
        pf = pushforward_change_of_generators(der, [parse_poly("lambda^2", 1)])
        lap = spectrum_sample([parse_element("-X1^2", alg)], SamplerConfig(samples=10**6, radius=2.5, seed=12))
        m_pf, m_lap = box_masses(pf, edges), box_masses(lap, edges)
        exact = np.array([oracles.laplacian_mass(a, b) for a, b in zip(edges[0][:-1], edges[0][1:])])
        assert np.max(np.abs(m_pf - m_lap) / m_lap) < 0.02
        assert np.max(np.abs(m_lap - exact) / exact) < 0.02
        assert np.max(np.abs(m_pf - exact) / exact) < 0.02


def test_09_product_plancherel():
    with criterion(9, "product Plancherel on R^2 equals product of 1-D measures, 10x10 boxes, 2%", 30.0):
        ab1, ab2 = catalog_get("abelian:1").lie_algebra(), catalog_get("abelian:2").lie_algebra()
        edges = np.linspace(0.0, 4.0, 11)
        joint = spectrum_sample(
            [parse_element("-X1^2", ab2), parse_element("-X2^2", ab2)], SamplerConfig(samples=10**6, radius=2.0, seed=21)
        )
        m2 = box_masses(joint, [edges, edges])
        one = [
            box_masses(spectrum_sample([parse_element("-X1^2", ab1)], SamplerConfig(samples=10**6, radius=2.0, seed=s)), [edges])
            for s in (22, 23)
        ]
        outer = np.outer(one[0], one[1])
        assert np.max(np.abs(m2 - outer) / outer) < 0.02
        exact = np.array([oracles.laplacian_mass(a, b) for a, b in zip(edges[:-1], edges[1:])])
        assert np.max(np.abs(m2 - np.outer(exact, exact)) / np.outer(exact, exact)) < 0.02


def test_10_convolution_identity():
    with criterion(10, "convolution identity against the heat kernel at t = 2", 10.0):
        alg = catalog_get("abelian:1").lie_algebra()
        f = multiplier("exp(-lambda)")
        res = convolution_identity_check(
            [parse_element("-X1^2", alg)], f, f, extent=20.0, step=0.05, reference=lambda x: oracles.heat_kernel(x, 2.0)
        )
        assert res.reference_dev < 1e-5
        assert res.max_abs_dev < 1e-5
        assert np.max(np.abs(res.direct - oracles.heat_kernel(res.axis, 2.0))) < 1e-5


def test_11_joint_injectivity():
    with criterion(11, "abelian joint injectivity verdicts", 5.0):
        alg = catalog_get("abelian:2").lie_algebra()
        v = abelian_joint_injectivity([parse_element("-i*X1", alg), parse_element("-i*X2", alg)])
        assert v.verdict == "injective"
        lap = parse_element("-X1^2", alg)
        v = abelian_joint_injectivity([lap])
        assert v.verdict == "not_injective"
        assert v.witness is not None and any(v.witness)
        assert symbol(lap).exact(v.witness) == 0


def test_12_delta():
    with criterion(12, "Delta for the n23 system: M = 12, degree 24", 5.0):
        alg = n23()
        gr = make_grading(alg, [1, 1, 2, 3, 3])
        sys_ = check_system([parse_element(t, alg) for t in N23_SYSTEM_3], gr)
        delta, M = build_homogeneous_delta(sys_, gr)
        assert M == 12
        assert homogeneity_degree(gr, delta) == 24
        assert all((Fraction(2 * M) / r).denominator == 1 for r in sys_.degrees)


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q"]))
