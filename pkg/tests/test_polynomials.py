from fractions import Fraction

import pytest

from app.core.errors import NegativeExponentResidue
from app.core.polynomials import T, UV, UVW, InvariantPolynomial, t_poly, uv_monomial, uvw_monomial


def test_arithmetic_is_exact():
    p = t_poly(1, 1)
    assert p * p == t_poly(1, 2, 1)
    assert p - p == InvariantPolynomial.zero(T)
    assert (p * Fraction(1, 3)).coefficient(1) == Fraction(1, 3)
    assert p ** 3 == t_poly(1, 3, 3, 1)


def test_canonical_string_is_graded_lex():
    poly = InvariantPolynomial.one(UV) + uv_monomial(1, 1) + uv_monomial(2, 1) + uv_monomial(1, 2)
    assert poly.to_string() == '1+uv+uv^2+u^2v'
    assert t_poly(0, -2, Fraction(1, 2)).to_string() == '-2t+(1/2)t^2'
    assert InvariantPolynomial.zero(T).to_string() == '0'


def test_reciprocal_symmetry_and_unimodality():
    assert t_poly(1, 2).reciprocal(2) == t_poly(0, 2, 1)
    assert t_poly(1, 3, 1).is_symmetric(2)
    assert not t_poly(1, 2).is_symmetric(1)
    assert t_poly(1, 3, 3, 1).is_unimodal()
    assert t_poly(0, 1, 0, 1).is_unimodal() is False


def test_monomial_substitution_collapses_variables():
    refined = InvariantPolynomial.one(UVW) + uvw_monomial(1, 1, 2)
    assert refined.monomial_substitute({'u': {'u': 1}, 'v': {'v': 1}, 'w': {}}, UV) == \
        InvariantPolynomial.one(UV) + uv_monomial(1, 1)
    to_hodge = refined.monomial_substitute({'u': {'u': 1, 'v': -1}, 'v': {}, 'w': {'v': 1}}, UV)
    assert to_hodge == InvariantPolynomial.one(UV) + uv_monomial(1, 1)


def test_first_difference_reports_smallest_exponent():
    a = t_poly(1, 2, 1)
    b = t_poly(1, 3, 1)
    assert a.first_difference(b) == ((1,), Fraction(2), Fraction(3))
    assert a.first_difference(a) is None


def test_negative_powers_are_rejected_on_demand():
    laurent = InvariantPolynomial(UV, {(1, -1): 1})
    with pytest.raises(NegativeExponentResidue):
        laurent.require_polynomial()


def test_dict_form_round_trips_text():
    poly = uv_monomial(0, 0) + uv_monomial(1, 1, 3)
    data = poly.to_dict()
    assert data['vars'] == ['u', 'v']
    assert data['terms'] == {'[0,0]': '1', '[1,1]': '3'}
    assert data['text'] == '1+3uv'
    assert InvariantPolynomial.from_dict(data) == poly


def test_mismatched_variables_raise():
    with pytest.raises(ValueError):
        t_poly(1) + uv_monomial(0, 0)
