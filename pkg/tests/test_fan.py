import pytest

from app.core.errors import (
    ConeNotInFan,
    IntersectionNotAFace,
    NonPointedCone,
    NonPrimitiveRay,
    NotPurelyDimensional,
    ParseError,
    RedundantRay,
)
from app.core.fan import (
    COMPLETE,
    SUPPORTED_ON_CONE,
    boundary_cones,
    boundary_fan,
    build_fan,
    classify_quasi_convex,
    is_complete,
    link,
)
from app.core.invariants import toric_h


def test_cones_are_ordered_by_rank_then_rays(cone2):
    assert [c.rays for c in cone2.cones] == [(), (0,), (1,), (0, 1)]
    assert cone2.zero == 0
    assert cone2.maximal == (3,)
    assert cone2.facets[3] == (1, 2)


def test_f_vector_and_simpliciality(complete5, square_cone):
    assert complete5.f_vector() == [1, 5, 5]
    assert complete5.is_simplicial()
    assert not square_cone.is_simplicial()
    assert square_cone.f_vector() == [1, 4, 4, 1]


def test_opposite_rays_do_not_span_a_pointed_cone():
    with pytest.raises(NonPointedCone):
        build_fan([[1, 0], [-1, 0]], [[0, 1]])


def test_interior_ray_is_redundant():
    with pytest.raises(RedundantRay):
        build_fan([[1, 0], [1, 1], [0, 1]], [[0, 1, 2]])


def test_overlapping_cones_are_rejected():
    with pytest.raises(IntersectionNotAFace):
        build_fan([[1, 0], [1, 2], [1, 1], [0, 1]], [[0, 1], [2, 3]])


def test_non_primitive_rays_are_normalized_unless_strict():
    fan = build_fan([[2, 0], [0, 3]], [[0, 1]])
    assert fan.rays == ((1, 0), (0, 1))
    assert fan.normalized
    with pytest.raises(NonPrimitiveRay):
        build_fan([[2, 0], [0, 3]], [[0, 1]], strict=True)


def test_completeness(complete4, cone2):
    assert is_complete(complete4)
    assert not is_complete(cone2)


def test_quasi_convex_classes(complete4, cone2, square_split):
    assert classify_quasi_convex(complete4).kind == COMPLETE
    assert classify_quasi_convex(cone2).kind == SUPPORTED_ON_CONE
    assert classify_quasi_convex(square_split.fine).kind == SUPPORTED_ON_CONE


def test_link_of_a_ray_in_a_complete_fan(complete4):
    ray = complete4.cone_index([0])
    star = link(complete4, ray)
    assert star.ambient_dim == 1
    assert sorted(star.rays) == [(-1,), (1,)]
    assert is_complete(star)
    assert set(star.to_parent.values()) == set(complete4.star[ray])


def test_link_of_the_zero_cone_is_the_fan(cone2):
    same = link(cone2, cone2.zero)
    assert len(same) == len(cone2)
    assert same.to_parent == {i: i for i in range(len(cone2))}


def test_boundary_of_a_cone_and_of_a_complete_fan(cone2, complete4):
    assert boundary_cones(cone2) == frozenset({0, 1, 2})
    assert boundary_cones(complete4) == frozenset()
    assert boundary_fan(cone2).dim == 1


def test_subfan_keeps_parent_indices(complete4):
    top = complete4.maximal[0]
    sub = complete4.subfan([top])
    assert len(sub) == 4
    assert sub.to_parent[sub.maximal[0]] == top


def test_a_fan_needs_at_least_one_cone():
    with pytest.raises(ParseError, match='at least one cone'):
        build_fan([], [], ambient_dim=2)
    origin = build_fan([], [[]], ambient_dim=2)
    assert origin.zero == 0
    assert origin.f_vector() == [1]


def test_missing_cones_are_reported(complete4):
    with pytest.raises(ConeNotInFan) as info:
        complete4.cone_index([0, 2])
    assert info.value.context['cone'] == [0, 2]
    with pytest.raises(ConeNotInFan):
        link(complete4, 99)


def test_mixed_dimensions_are_not_pure():
    lopsided = build_fan([[1, 0], [0, 1], [-1, -1]], [[0, 1], [2]], ambient_dim=2)
    assert not lopsided.is_pure()
    with pytest.raises(NotPurelyDimensional) as info:
        toric_h(lopsided)
    assert info.value.context['dims'] == [1, 2]
