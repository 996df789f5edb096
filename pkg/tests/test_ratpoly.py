from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from folbott.ratpoly import (NotDivisible, Polynomial, format_poly,
                             fraction_from_json, fraction_to_json,
                             parse_poly)


def small_polys():
    coeff = st.integers(min_value=-3, max_value=3)
    expo = st.tuples(st.integers(min_value=0, max_value=2),
                     st.integers(min_value=0, max_value=2))

    def build(terms):
        p = Polynomial.zero()
        for (e0, e1), c in terms:
            p = p + Polynomial.monomial({"x0": e0, "x1": e1}, c)
        return p

    return st.lists(st.tuples(expo, coeff), max_size=3).map(build)


def test_parse_and_format_roundtrip():
    for text in ["x0^2 + 2*x1 - 1/2", "3*x0*x1^2 - x2", "0", "7",
                 "x1^3 - 1/3*x0*x2*x3"]:
        p = parse_poly(text)
        assert parse_poly(format_poly(p)) == p


def test_parse_fraction_coefficients():
    p = parse_poly("1/3*x1^3")
    assert p.evaluate({"x1": 3}) == 9


def test_format_is_graded_lex():
    assert format_poly(parse_poly("2*x1 + x0^2 - 1/2")) == "x0^2 + 2*x1 - 1/2"


def test_product_difference_of_squares():
    x = Polynomial.variable("x0")
    one = Polynomial.constant(1)
    assert (x + one) * (x - one) == x * x - one


@settings(max_examples=60)
@given(small_polys(), small_polys(), small_polys())
def test_ring_axioms(p, q, r):
    assert p + q == q + p
    assert p * q == q * p
    assert p * (q + r) == p * q + p * r
    assert (p * q) * r == p * (q * r)


@settings(max_examples=60)
@given(small_polys(), small_polys())
def test_exact_divide_inverts_multiplication(p, q):
    if q.is_zero():
        return
    assert (p * q).exact_divide(q) == p


def test_exact_divide_failure_carries_context():
    p = parse_poly("x0^2 + x1")
    with pytest.raises(NotDivisible) as err:
        p.exact_divide(parse_poly("x0"), context=("here", 3))
    assert err.value.context == ("here", 3)


@settings(max_examples=60)
@given(small_polys(), small_polys())
def test_substitution_is_a_homomorphism(p, q):
    mapping = {"x0": parse_poly("x1 + 1"), "x1": Fraction(2)}
    assert (p * q).substitute(mapping) == \
        p.substitute(mapping) * q.substitute(mapping)
    assert (p + q).substitute(mapping) == \
        p.substitute(mapping) + q.substitute(mapping)


def test_coefficients_in_groups_by_exponent():
    p = parse_poly("a0*x0^2 + 3*a1*x0^2 + b0*x1")
    grouped = p.coefficients_in(("x0", "x1"))
    assert grouped[(2, 0)] == parse_poly("a0 + 3*a1")
    assert grouped[(0, 1)] == parse_poly("b0")


def test_proportional():
    p = parse_poly("2*x0 + 4*x1")
    q = parse_poly("x0 + 2*x1")
    assert p.proportional(q) == 2
    assert p.proportional(parse_poly("x0 + x1")) is None
    assert Polynomial.zero().proportional(Polynomial.zero()) == 1


def test_fraction_json_roundtrip():
    q = Fraction(-355, 113)
    blob = fraction_to_json(q)
    assert blob == {"num": "-355", "den": "113"}
    assert fraction_from_json(blob) == q
