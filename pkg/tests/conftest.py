import os
import sys
from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

sys.path.insert(0, os.path.dirname(__file__))

from weightedlie import EnvElement, LieAlgebra, catalog_get  # noqa: E402
from weightedlie.scalars import GaussRational  # noqa: E402
from weightedlie.weighted import structure_in_basis  # noqa: E402

settings.register_profile("default", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

# small algebras (dim <= 5) used by the random suites
SMALL = ["abelian:2", "abelian:3", "h1", "sl2", "n23", "h2", "h1*abelian:1", "sl2*abelian:1"]


@pytest.fixture(scope="session")
def n23():
    return catalog_get("n23").lie_algebra()


@pytest.fixture(scope="session")
def sl2():
    return catalog_get("sl2").lie_algebra()


@pytest.fixture(scope="session")
def h1():
    return catalog_get("h1").lie_algebra()


def changed_basis(alg: LieAlgebra, columns) -> LieAlgebra:
    """The same algebra written in the basis ``columns``."""
    return LieAlgebra([f"E{k + 1}" for k in range(alg.dim)], structure_in_basis(alg, columns))


@st.composite
def invertible_matrices(draw, n, height=2):
    """Unit lower-triangular times unit upper-triangular integer matrices."""
    L = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    U = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    for i in range(n):
        for j in range(n):
            if i > j:
                L[i][j] = Fraction(draw(st.integers(-height, height)))
            elif i < j:
                U[i][j] = Fraction(draw(st.integers(-height, height)))
    M = [[sum(L[i][k] * U[k][j] for k in range(n)) for j in range(n)] for i in range(n)]
    return [tuple(M[i][j] for i in range(n)) for j in range(n)]  # columns


gauss = st.builds(GaussRational, st.integers(-10, 10), st.integers(-10, 10))


@st.composite
def word_terms(draw, dim, max_terms=3, max_len=3):
    """{word: (re, im)} raw words over the basis letters."""
    out = {}
    for _ in range(draw(st.integers(1, max_terms))):
        w = tuple(draw(st.lists(st.integers(0, dim - 1), min_size=0, max_size=max_len)))
        c = draw(gauss)
        a = out.get(w, (0, 0))
        out[w] = (a[0] + c.re, a[1] + c.im)
    return out


def element_from_words(alg, terms) -> EnvElement:
    gens = [EnvElement.generator(alg, i) for i in range(alg.dim)]
    total = EnvElement.zero(alg)
    for w, (re, im) in terms.items():
        x = EnvElement.one(alg)
        for a in w:
            x = x * gens[a]
        total = total + x.scale(GaussRational(re, im))
    return total


def as_pairs(d: EnvElement) -> dict:
    return {e: (c.re, c.im) for e, c in d.terms.items()}


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(mod.RESULTS):
        terminalreporter.write_line(mod.RESULTS[num])
