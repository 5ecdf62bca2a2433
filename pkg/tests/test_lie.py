from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from weightedlie import LieAlgebra, catalog_get, check_jacobi, descending_central_series, guivarch_growth_degree
from weightedlie.errors import DimensionMismatch, InputError, JacobiViolation, NonNilpotent
from weightedlie.lie import generated_subalgebra

import oracles
from conftest import SMALL, changed_basis, invertible_matrices


def test_n23_relations_and_series(n23):
    assert n23.names == ("X1", "X2", "Y", "T1", "T2")
    assert n23.bracket(n23.vector({"X1": 1}), n23.vector({"X2": 1})) == n23.vector({"Y": 1})
    assert n23.bracket(n23.vector({"Y": 1}), n23.vector({"X2": 1})) == n23.vector({"T2": -1})
    s = descending_central_series(n23)
    assert s.dims == [5, 3, 2, 0]
    assert s.nilpotent and s.step == 3
    assert guivarch_growth_degree(n23) == 10
    assert n23.center().dim == 2


@pytest.mark.parametrize("name", SMALL + ["h3", "abelian:7", "n23*h1"])
def test_structure_matches_oracle(name):
    alg = catalog_get(name).lie_algebra()
    assert oracles.jacobi_holds(alg)
    dims = oracles.central_series_dims(alg)
    s = descending_central_series(alg)
    assert s.dims == dims
    if dims[-1] == 0:
        assert guivarch_growth_degree(alg) == oracles.growth_degree(alg)
    else:
        with pytest.raises(NonNilpotent):
            guivarch_growth_degree(alg)


@pytest.mark.parametrize("n, q", [(1, 4), (2, 6), (3, 8)])
def test_heisenberg_growth(n, q):
    # Q_G(h_n) = 2n + 2
    assert guivarch_growth_degree(catalog_get(f"h{n}").lie_algebra()) == q


def test_sl2_is_perfect_not_nilpotent(sl2):
    s = descending_central_series(sl2)
    assert not s.nilpotent
    assert s.dims == [3]
    with pytest.raises(NonNilpotent) as exc:
        guivarch_growth_degree(sl2)
    assert exc.value.witness["dims"] == [3]


def test_jacobi_violation_carries_witness():
    with pytest.raises(JacobiViolation) as exc:
        LieAlgebra.from_relations(
            ["A", "B", "C"], {("A", "B"): {"C": 1}, ("A", "C"): {"A": 1}, ("B", "C"): {"A": 1}}
        )
    assert exc.value.witness["triple"] == ("A", "B", "C")
    assert any(exc.value.witness["residual"])


@pytest.mark.parametrize(
    "names, rel, err",
    [
        (["X", "X"], {}, InputError),
        (["X", "Y"], {("X", "Z"): {"Y": 1}}, InputError),
        (["X", "Y"], {("X", "Y"): {"W": 1}}, InputError),
        (["X", "Y"], {("X", "Y"): {"Y": 1}, ("Y", "X"): {"Y": 1}}, InputError),
    ],
)
def test_bad_relations(names, rel, err):
    with pytest.raises(err):
        LieAlgebra.from_relations(names, rel)


def test_table_shape_checked():
    with pytest.raises(DimensionMismatch):
        LieAlgebra(["X", "Y"], {(0, 1): (1, 0, 0)})


def test_antisymmetry_from_reversed_pairs():
    a = LieAlgebra(["X", "Y", "Z"], {(1, 0): (0, 0, -1)})
    assert a.table == {(0, 1): (0, 0, 1)}
    assert a == catalog_get("h1").lie_algebra()


def test_generated_subalgebra(n23):
    assert generated_subalgebra(n23, [n23.vector({"X1": 1}), n23.vector({"X2": 1})]).dim == 5
    assert generated_subalgebra(n23, [n23.vector({"X1": 1}), n23.vector({"Y": 1})]).dim == 3


@pytest.mark.parametrize("name", ["n23", "h2", "sl2", "h1*abelian:1"])
@given(data=st.data())
@settings(max_examples=15)
def test_series_invariant_under_change_of_basis(name, data):
    alg = catalog_get(name).lie_algebra()
    cols = data.draw(invertible_matrices(alg.dim))
    other = changed_basis(alg, cols)
    check_jacobi(other)
    assert descending_central_series(other).dims == descending_central_series(alg).dims
    assert other.center().dim == alg.center().dim
