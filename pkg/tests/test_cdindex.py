import pytest

from app.core.cdindex import ab_index, cd_index, flag_f, local_cd_index, mixed_cd, preimage_local_cd
from app.core.corpus import complete_polygon_fan
from app.core.ncpoly import NCPolynomial, TensorNCPolynomial, eta, eta_prime
from app.core.polynomials import UV, InvariantPolynomial, t_poly, uv_monomial
from app.core.subdivision import identity_subdivision
from conftest import POLYGON_RAYS


def test_flag_vector_of_a_square(complete4):
    flags = flag_f(complete4)
    assert flags[[]] == 1
    assert flags[[1]] == 4
    assert flags[[2]] == 4
    assert flags[[1, 2]] == 8
    assert flags.to_dict() == {'{}': 1, '{1}': 4, '{2}': 4, '{1,2}': 8}


@pytest.mark.parametrize('m', [3, 4, 5, 6])
def test_cd_index_of_polygon_fans(m):
    fan = complete_polygon_fan(POLYGON_RAYS[m], f'complete-{m}')
    assert cd_index(fan) == NCPolynomial('cd', {'cc': 1, 'd': m - 2})


def test_single_cone_indices(cone2):
    assert ab_index(cone2) == NCPolynomial('ab', {'aa': 1, 'ba': 1})
    assert cd_index(cone2) == NCPolynomial.word('cd', 'c')
    assert local_cd_index(cone2) == NCPolynomial.zero('cd')


def test_split_cone_indices(split2):
    fine = split2.fine
    assert ab_index(fine) == NCPolynomial('ab', {'aa': 1, 'ab': 1, 'ba': 2})
    assert local_cd_index(fine) == NCPolynomial.word('cd', 'd')
    assert cd_index(fine) == NCPolynomial('cd', {'c': 1, 'd': 1})


def test_local_cd_index_of_the_zero_fan_is_one(split2):
    assert preimage_local_cd(split2, split2.coarse.zero) == NCPolynomial.one('cd')


def test_mixed_cd_of_the_split_cone(split2):
    omega = mixed_cd(split2)
    assert omega == TensorNCPolynomial({('', 'c'): 1, ('d', ''): 1})
    assert eta_prime(omega) == InvariantPolynomial.one(UV) + uv_monomial(1, 1) + uv_monomial(1, 2) \
        + uv_monomial(2, 1)


def test_mixed_cd_of_an_identity_subdivision_is_one_tensor_phi(complete4):
    omega = mixed_cd(identity_subdivision(complete4))
    assert omega == TensorNCPolynomial.tensor(NCPolynomial.one('cd'), cd_index(complete4))


def test_eta_of_the_cd_index_counts_c_structure_sections(complete4):
    assert eta(cd_index(complete4)) == t_poly(1, 3, 3, 1)
