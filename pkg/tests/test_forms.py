from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from weightedlie import WeightedBasis, catalog_get
from weightedlie.errors import ZeroForm
from weightedlie.expr import parse_element, parse_form
from weightedlie.forms import Form, adjoint_form, form_degree, is_homogeneous_form, principal_part, realize
from weightedlie.grading import make_grading
from weightedlie.scalars import GaussRational
from weightedlie.systems import contracted_principal, even_degree_condition, homogeneity_degree, minimal_dominating_power
from weightedlie.weighted import contract

from conftest import gauss


def n23_basis(alg, weights=(1, 1, 2, 3, 3)):
    return WeightedBasis.from_names(alg, alg.names, weights)


def forms_over(basis, max_len=4, max_terms=4):
    d = len(basis)
    word = st.lists(st.integers(0, d - 1), max_size=max_len).map(tuple)
    return st.dictionaries(word, gauss, max_size=max_terms).map(lambda t: Form(basis, t))


def test_degree_and_principal_part(n23):
    b = n23_basis(n23)
    c = parse_form("2*X2*T1 - 2*X1*T2 - Y^2 + X1 + 3", b)
    assert form_degree(c) == 4
    assert principal_part(c) == parse_form("2*X2*T1 - 2*X1*T2 - Y^2", b)
    assert not is_homogeneous_form(c)
    assert is_homogeneous_form(principal_part(c))
    with pytest.raises(ZeroForm):
        form_degree(Form(b))


def test_adjoint_form_examples(n23):
    b = n23_basis(n23)
    # odd words flip sign, coefficients conjugate, words reverse
    assert adjoint_form(parse_form("X1*Y", b)) == parse_form("Y*X1", b)
    assert adjoint_form(parse_form("i*T1", b)) == parse_form("i*T1", b)
    assert adjoint_form(parse_form("X1", b)) == parse_form("-X1", b)
    c = parse_form("-(X1^2 + X2^2)", b)
    assert adjoint_form(c) == c


def test_realize_known_elements(n23):
    b = n23_basis(n23)
    assert realize(parse_form("-(X1^2 + X2^2)", b)) == parse_element("-(X1^2 + X2^2)", n23)
    # over a non-coordinate basis the letters stand for Y+T1 etc.
    fb = catalog_get("footnote-basis")
    wb = WeightedBasis(
        n23, [parse_vector(e, n23) for e in fb.basis], fb.weights, labels=["A1", "A2", "A3", "A4", "A5"]
    )
    assert realize(parse_form("A3^2", wb)) == parse_element("(Y + T1)^2", n23)


def parse_vector(text, alg):
    from weightedlie.expr import parse_vector as pv

    return pv(text, alg)


@given(data=st.data())
@settings(max_examples=40)
def test_realize_commutes_with_adjoint(data):
    name = data.draw(st.sampled_from(["n23", "sl2", "h1"]))
    alg = catalog_get(name).lie_algebra()
    b = WeightedBasis.from_names(alg, alg.names, [1] * alg.dim)
    c = data.draw(forms_over(b))
    assert realize(adjoint_form(c)) == realize(c).adjoint()
    assert adjoint_form(adjoint_form(c)) == c


@given(data=st.data())
@settings(max_examples=40)
def test_realize_is_linear_and_multiplicative(data):
    alg = catalog_get("n23").lie_algebra()
    b = n23_basis(alg)
    c, e = data.draw(forms_over(b, 3, 3)), data.draw(forms_over(b, 3, 3))
    k = data.draw(gauss)
    assert realize(c + e) == realize(c) + realize(e)
    assert realize(c * Form.scalar(b, k)) == realize(c).scale(k)
    assert realize(c * e) == realize(c) * realize(e)


@given(data=st.data())
@settings(max_examples=40)
def test_straightening_preserves_graded_degree(data):
    alg = catalog_get("n23").lie_algebra()
    b = n23_basis(alg)
    gr = make_grading(alg, [1, 1, 2, 3, 3])
    c = data.draw(forms_over(b))
    if c.is_zero():
        return
    p = principal_part(c)
    r = realize(p)
    if not r.is_zero():
        assert homogeneity_degree(gr, r) == form_degree(p)


@given(data=st.data())
@settings(max_examples=40)
def test_degree_additivity(data):
    alg = catalog_get("n23").lie_algebra()
    b = n23_basis(alg)
    c, e = data.draw(forms_over(b, 3, 3)), data.draw(forms_over(b, 3, 3))
    if c.is_zero() or e.is_zero():
        return
    pp = principal_part(c) * principal_part(e)
    if not pp.is_zero():
        assert form_degree(c * e) == form_degree(c) + form_degree(e)
        assert principal_part(c * e) == pp


def test_even_degree_condition():
    ab = catalog_get("abelian:2").lie_algebra()
    assert even_degree_condition(parse_form("X1^4 + X2^2", WeightedBasis.from_names(ab, ["X1", "X2"], [1, 2])))
    assert not even_degree_condition(
        parse_form("X1^2", WeightedBasis.from_names(ab, ["X1", "X2"], [1, Fraction(3, 2)]))
    )


def test_even_degree_per_generator(n23):
    b = n23_basis(n23)
    ev = even_degree_condition(parse_form("2*X2*T1 - 2*X1*T2 - Y^2", b))
    assert ev.degree == 4
    assert ev.per_generator == (True, True, True, False, False)
    assert not ev.full and not ev.used_only
    # a degree-4 form that avoids the weight-3 letters passes on what it uses
    ev = even_degree_condition(parse_form("X1^4 + Y^2", b))
    assert ev.used == (0, 2)
    assert ev.used_only and not ev.full


@pytest.mark.parametrize(
    "dc, db, weights, expected",
    [(2, 5, (1, 1), 3), (2, 1, (1, 1), 1), (4, 10, (1, 2), 3), (2, 0, (1, 1), 1), (6, 6, (1, 3), 2)],
)
def test_minimal_dominating_power(dc, db, weights, expected):
    ab = catalog_get("abelian:2").lie_algebra()
    b = WeightedBasis.from_names(ab, ["X1", "X2"], weights)
    # X1^k has weight k * w1 = k here
    c = Form(b, {(0,) * dc: 1})
    lower = Form(b, {(0,) * db: 1})
    assert minimal_dominating_power(c, lower) == expected


def brute_power(m, mb, weights):
    r = 1
    while not (r * m > mb and all((r * m / w).denominator == 1 and (r * m / w).numerator % 2 == 0 for w in weights)):
        r += 1
    return r


@given(
    st.integers(1, 6),
    st.integers(0, 30),
    st.lists(st.fractions(min_value=1, max_value=4, max_denominator=3), min_size=1, max_size=3),
)
def test_minimal_dominating_power_against_search(k, kb, extra):
    weights = [Fraction(1)] + extra
    ab = catalog_get(f"abelian:{len(weights)}").lie_algebra()
    b = WeightedBasis.from_names(ab, ab.names, weights)
    c, lower = Form(b, {(0,) * k: 1}), Form(b, {(0,) * kb: 1})
    assert minimal_dominating_power(c, lower) == brute_power(Fraction(k), Fraction(kb), weights)


def test_contracted_principal_on_graded_algebra(n23):
    b = n23_basis(n23)
    k = contract(b)
    c = parse_form("2*X2*T1 - 2*X1*T2 - Y^2 + X1", b)
    p = principal_part(c)
    got = contracted_principal(c, k)
    assert got.algebra == k.algebra
    # the contraction of a graded algebra reproduces it, so the two agree term for term
    want = realize(p + adjoint_form(p))
    assert {e: v for e, v in got.terms.items()} == {e: v for e, v in want.terms.items()}


def test_contracted_principal_sl2_lands_in_heisenberg(sl2):
    b = WeightedBasis.from_names(sl2, ["E", "F"], [1, 1])
    k = contract(b)
    c = parse_form("-(E^2 + F^2 + (E*F + F*E))", b)
    got = contracted_principal(c, k)
    assert got.algebra == k.algebra
    assert k.algebra.center().dim == 1
    assert got == parse_element("-2*(E^2 + F^2 + 2*E*F) + 2*H", k.algebra)
    assert got.adjoint() == got


def test_contracted_principal_abelian_is_commutative():
    ab = catalog_get("abelian:2").lie_algebra()
    b = WeightedBasis.from_names(ab, ["X1", "X2"], [1, 1])
    got = contracted_principal(parse_form("X1*X2 + X2*X1", b), contract(b))
    assert got == parse_element("4*X1*X2", got.algebra)
