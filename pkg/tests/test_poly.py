from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from foliated.poly import (
    INFINITY,
    ParseError,
    Polynomial,
    as_fraction,
    evaluate,
    format_fraction,
    infer_dimension,
    parse_polynomial,
    parse_polynomial_list,
    partial_derivative,
    weighted_lowest_part,
    weighted_order,
)


def P(text, n):
    return parse_polynomial(text, n)


@st.composite
def polynomials(draw, n=None, max_degree=5, max_terms=8):
    if n is None:
        n = draw(st.integers(1, 4))
    k = draw(st.integers(0, max_terms))
    terms = {}
    for _ in range(k):
        d = draw(st.integers(0, max_degree))
        alpha = [0] * n
        for _ in range(d):
            alpha[draw(st.integers(0, n - 1))] += 1
        c = Fraction(draw(st.integers(-20, 20)), draw(st.integers(1, 9)))
        terms[tuple(alpha)] = terms.get(tuple(alpha), 0) + c
    return Polynomial(n, terms)


@st.composite
def same_dim(draw, count, **kw):
    n = draw(st.integers(1, 3))
    return [draw(polynomials(n=n, **kw)) for _ in range(count)]


# parsing


def test_parse_single_square():
    p = P("y^2", 2)
    assert p.terms == {(0, 2): 1}


def test_parse_two_generators():
    p = P("x2^2*x3 + x1*x3^2", 3)
    assert p.support == {(0, 2, 1), (1, 0, 2)}


def test_parse_cancellation():
    assert P("1/2*x1 - x1", 1) == Polynomial(1, {(1,): Fraction(-1, 2)})


def test_parse_parentheses_and_powers():
    assert P("(x+y)^2", 2) == P("x^2 + 2*x*y + y^2", 2)
    assert P("-(x^3+y^3)", 2) == P("-x^3 - y^3", 2)
    assert P("3*2*x", 1) == P("6*x", 1)


def test_parse_errors_carry_positions():
    with pytest.raises(ParseError) as exc:
        P("x^2*y +* 1", 2)
    assert exc.value.position == 7
    with pytest.raises(ParseError):
        P("x4", 3)
    with pytest.raises(ParseError):
        P("z", 2)
    with pytest.raises(ParseError):
        P("x^", 1)
    with pytest.raises(ParseError):
        P("(x", 1)
    with pytest.raises(ParseError):
        P("1/0*x", 1)


def test_aliases_only_in_small_dimension():
    assert P("x + y + z", 3) == P("x1 + x2 + x3", 3)
    with pytest.raises(ParseError):
        P("x", 4)


def test_parse_list_offsets():
    a, b = parse_polynomial_list("y^2, -x^2", 2)
    assert (str(a), str(b)) == ("x2^2", "-x1^2")
    with pytest.raises(ParseError) as exc:
        parse_polynomial_list("x, y+*1", 2)
    assert exc.value.position == 5


def test_infer_dimension():
    assert infer_dimension("x2^2*x3") == 3
    assert infer_dimension("y") == 2
    assert infer_dimension("1") == 1


def test_canonical_print():
    assert str(P("y^3 + x^2 + x*y + 1", 2)) == "x2^3 + x1^2 + x1*x2 + 1"
    assert str(Polynomial.zero(2)) == "0"
    assert str(P("-1/2*x", 1)) == "-1/2*x1"
    assert P("x + 1", 2).to_string(["a", "b"]) == "a + 1"


@settings(max_examples=1000, deadline=None)
@given(polynomials())
def test_print_parse_round_trip(p):
    assert parse_polynomial(str(p), p.dimension) == p


# arithmetic


def test_difference_of_squares():
    x, y = Polynomial.variable(1, 2), Polynomial.variable(2, 2)
    assert (x + y) * (x - y) == P("x^2 - y^2", 2)


def test_additive_inverse():
    p = P("x*y + 3", 2)
    assert (p + (-p)).is_zero()
    assert (p - p).terms == {}


def test_monomial_product():
    assert P("x1*x3^2", 3) * P("x1^2*x2", 3) == P("x1^3*x2*x3^2", 3)


def test_dimension_mismatch():
    with pytest.raises(ValueError):
        P("x", 1) + P("x", 2)


def test_no_zero_terms_stored():
    p = Polynomial(2, {(1, 0): 0, (0, 1): 2})
    assert p.terms == {(0, 1): 2}


def test_rejects_floats():
    with pytest.raises(TypeError):
        as_fraction(0.5)
    with pytest.raises(TypeError):
        Polynomial.constant(1.5, 1)


def test_format_fraction():
    assert format_fraction(Fraction(1)) == "1/1"
    assert format_fraction(Fraction(-3, 6)) == "-1/2"


@settings(max_examples=200, deadline=None)
@given(same_dim(3, max_degree=3, max_terms=4))
def test_ring_laws(polys):
    p, q, r = polys
    assert (p + q) + r == p + (q + r)
    assert (p * q) * r == p * (q * r)
    assert p + q == q + p
    assert p * q == q * p
    assert p * (q + r) == p * q + p * r


@settings(max_examples=200, deadline=None)
@given(same_dim(2, max_degree=3, max_terms=4))
def test_leibniz(polys):
    p, q = polys
    for i in range(1, p.dimension + 1):
        assert partial_derivative(p * q, i) == p * partial_derivative(q, i) + q * partial_derivative(p, i)


@settings(max_examples=200, deadline=None)
@given(same_dim(2, max_degree=4, max_terms=4), st.data())
def test_weighted_order_and_lowest_part_are_multiplicative(polys, data):
    p, q = polys
    n = p.dimension
    w = tuple(data.draw(st.integers(1, 4)) for _ in range(n))
    if p.is_zero() or q.is_zero():
        return
    assert weighted_order(p * q, w) == weighted_order(p, w) + weighted_order(q, w)
    assert weighted_lowest_part(p * q, w) == weighted_lowest_part(p, w) * weighted_lowest_part(q, w)


# derivatives, orders, evaluation


def test_partial_derivatives():
    assert partial_derivative(P("x^2*y", 2), 1) == P("2*x*y", 2)
    assert partial_derivative(P("x^2", 2), 2).is_zero()
    assert partial_derivative(P("x1*x3^2", 3), 3) == P("2*x1*x3", 3)
    with pytest.raises(IndexError):
        partial_derivative(P("x", 1), 2)


def test_weighted_order():
    p = P("x^2 + y^3", 2)
    assert weighted_order(p, (1, 1)) == 2
    assert weighted_order(p, (3, 2)) == 6
    assert weighted_order(Polynomial.zero(2), (1, 1)) is INFINITY


def test_weighted_lowest_part():
    p = P("x^2 + y^3", 2)
    assert weighted_lowest_part(p, (1, 1)) == P("x^2", 2)
    assert weighted_lowest_part(p, (3, 2)) == p
    with pytest.raises(ValueError):
        weighted_lowest_part(Polynomial.zero(2))
    with pytest.raises(ValueError):
        weighted_order(p, (0, 1))


def test_lowest_part_of_tangency_curve():
    # mu x b - lambda y a for a = 2x + 3y + x^2, b = 5x - y + y^3, lambda = 7, mu = 11
    g = P("11*x*(5*x - y + y^3) - 7*y*(2*x + 3*y + x^2)", 2)
    assert weighted_lowest_part(g) == P("55*x^2 - 21*y^2 + (-11 - 14)*x*y", 2)


def test_evaluate():
    assert evaluate(P("x^2 + y", 2), (0, 0)) == 0
    assert evaluate(P("x^2 + y", 2), (1, Fraction(1, 2))) == Fraction(3, 2)
    assert evaluate(P("x1*x3^2", 3), (2, 0, 3)) == 18
    with pytest.raises(ValueError):
        evaluate(P("x", 2), (1,))


def test_restrict_and_divide():
    p = P("x1*x2 + x1*x3^2", 3)
    g = p.divide_by_monomial((1, 0, 0))
    assert g == P("x2 + x3^2", 3)
    assert p.divide_by_monomial((0, 1, 0)) is None
    assert g.restrict((3,)) == P("x1^2", 1)
