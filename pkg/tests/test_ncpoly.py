import pytest

from app.core.errors import NotCDExpressible
from app.core.ncpoly import NCPolynomial, TensorNCPolynomial, ab_to_cd, cd_to_ab, cd_words, eta, eta_prime
from app.core.polynomials import UV, InvariantPolynomial, t_poly, uv_monomial


def test_eta_of_one_is_one():
    assert eta(NCPolynomial.one('cd')) == t_poly(1)


def test_eta_uses_prefix_degree_powers():
    expected = t_poly(1, 1) * InvariantPolynomial.from_coefficients([1, 0, 1]) \
        * InvariantPolynomial.from_coefficients([0, 0, 0, 0, 1, 0, 0, 0, 1])
    assert eta(NCPolynomial.word('cd', 'ccd')) == expected


def test_eta_of_square_cd_index_is_c_structure_poincare():
    phi = NCPolynomial('cd', {'cc': 1, 'd': 2})
    assert eta(phi) == t_poly(1, 3, 3, 1)


def test_eta_prime_on_basic_pairs():
    assert eta_prime(TensorNCPolynomial({('', 'c'): 1})) == InvariantPolynomial.one(UV) + uv_monomial(1, 1)
    assert eta_prime(TensorNCPolynomial({('d', ''): 1})) == uv_monomial(1, 2) + uv_monomial(2, 1)


def test_omega_of_split_renders_with_primes():
    omega = TensorNCPolynomial({('', 'c'): 1, ('d', ''): 1})
    assert omega.to_string() == "1⊗c+d'⊗1"
    assert omega.to_dict()['terms'] == {'1|c': '1', "d'|1": '1'}


def test_cd_and_ab_conversions_invert():
    phi = NCPolynomial('cd', {'cc': 1, 'd': 2})
    psi = cd_to_ab(phi)
    assert psi == NCPolynomial('ab', {'aa': 1, 'ab': 3, 'ba': 3, 'bb': 1})
    assert ab_to_cd(psi) == phi


def test_non_eulerian_ab_polynomial_is_not_cd_expressible():
    with pytest.raises(NotCDExpressible):
        ab_to_cd(NCPolynomial('ab', {'ab': 1}))


def test_cd_word_counts_follow_fibonacci():
    assert [len(cd_words(n)) for n in range(6)] == [1, 1, 2, 3, 5, 8]
