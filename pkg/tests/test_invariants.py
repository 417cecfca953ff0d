import pytest

from app.core.corpus import complete_polygon_fan, cone
from app.core.degree_map import gorenstein_degree_map
from app.core.errors import DegreeMapMismatch, NotEulerian, NotGorenstein, TargetNotSingleCone
from app.core.invariants import (
    ehrhart_reciprocity_check,
    hstar,
    limit_mixed_hstar,
    link_h,
    local_h,
    local_hstar,
    local_limit_mixed_hstar,
    mixed_h,
    mixed_hstar,
    refined_limit_mixed_hstar,
    toric_g,
    toric_h,
)
from app.core.polynomials import UV, InvariantPolynomial, t_poly, uv_monomial, uvw_monomial
from app.core.poset import EulerianPosetView, GradedPoset, cone_view
from conftest import POLYGON_RAYS


@pytest.mark.parametrize('m', [3, 4, 5, 6])
def test_h_of_complete_polygon_fans(m):
    fan = complete_polygon_fan(POLYGON_RAYS[m], f'complete-{m}')
    assert toric_h(fan) == t_poly(1, m - 2, 1)


def test_h_of_a_single_simplicial_cone_is_one(cone2):
    assert toric_h(cone2) == t_poly(1)


def test_g_of_the_square_cone(square_cone):
    assert toric_g(cone_view(square_cone, square_cone.maximal[0])) == t_poly(1, 1)
    assert toric_h(square_cone) == t_poly(1, 1)


def test_link_h_of_a_ray(complete4):
    assert link_h(complete4, complete4.cone_index([0])) == t_poly(1, 1)


def test_local_h_of_the_split_cone(split2):
    assert local_h(split2) == t_poly(0, 1)
    assert local_h(split2, split2.coarse.cone_index([0])) == InvariantPolynomial.zero()


def test_local_h_needs_a_single_cone_target(complete4_plus_diagonal):
    with pytest.raises(TargetNotSingleCone):
        local_h(complete4_plus_diagonal)


def test_mixed_h(split2, complete4_plus_diagonal):
    assert mixed_h(split2) == InvariantPolynomial.one(UV) + uv_monomial(1, 1)
    assert mixed_h(complete4_plus_diagonal) == \
        InvariantPolynomial.one(UV) + uv_monomial(1, 1, 3) + uv_monomial(2, 2)


def test_hstar_of_cones(square_cone, segment_cone, cone2):
    assert hstar(square_cone) == t_poly(1, 1)
    assert hstar(segment_cone) == t_poly(1, 1)
    assert hstar(cone2) == t_poly(1)


def test_local_hstar(square_cone, segment_cone, cone2):
    assert local_hstar(square_cone) == InvariantPolynomial.zero()
    assert local_hstar(segment_cone) == t_poly(0, 1)
    assert local_hstar(cone2) == InvariantPolynomial.zero()


def test_mixed_hstar_of_the_square_cone(square_cone):
    assert mixed_hstar(square_cone) == InvariantPolynomial.one(UV) + uv_monomial(1, 1)


def test_mixed_hstar_of_a_complete_fan_is_h_in_uv(complete4):
    assert mixed_hstar(complete4) == InvariantPolynomial.one(UV) + uv_monomial(1, 1, 2) + uv_monomial(2, 2)


def test_limit_family_on_the_split_segment_cone(segment_split):
    assert limit_mixed_hstar(segment_split) == InvariantPolynomial.one(UV) + uv_monomial(1, 1)
    assert local_limit_mixed_hstar(segment_split) == uv_monomial(1, 1)
    refined = refined_limit_mixed_hstar(segment_split)
    assert refined == uvw_monomial(0, 0, 0) + uvw_monomial(1, 1, 2)


def test_non_gorenstein_cone_is_rejected():
    skewed = cone([[3, 1], [1, 3]], 'skewed')
    with pytest.raises(NotGorenstein):
        gorenstein_degree_map(skewed)


def test_ehrhart_reciprocity(segment_cone, square_cone):
    assert ehrhart_reciprocity_check(segment_cone)
    assert ehrhart_reciprocity_check(square_cone)


def test_coarse_degree_map_must_be_one_on_fine_rays(split2):
    # x + y is 1 on both coarse rays but 2 on the new ray (1,1)
    with pytest.raises(DegreeMapMismatch) as info:
        limit_mixed_hstar(split2, gorenstein_degree_map(split2.coarse))
    assert info.value.context['ray'] == [1, 1]
    assert info.value.context['value'] == '2'


def test_toric_g_refuses_a_chain_of_length_two():
    chain = GradedPoset({0: 0, 1: 1, 2: 2}, {0: {0}, 1: {0, 1}, 2: {0, 1, 2}}, name='chain')
    view = EulerianPosetView(chain, 0, 2)
    assert not view.is_eulerian()
    with pytest.raises(NotEulerian) as info:
        toric_g(view)
    assert info.value.context == {'bottom': '0', 'top': '2'}
