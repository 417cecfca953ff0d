import pytest

from app.core.corpus import cone, cyclic_fan
from app.core.errors import NotARefinement, SupportMismatch
from app.core.subdivision import build_subdivision, identity_subdivision, simplicial_refinement


def test_split_maps_new_ray_to_the_top_cone(split2):
    fine, coarse = split2.fine, split2.coarse
    diagonal = fine.cone_index([1])
    assert split2.pi[diagonal] == coarse.maximal[0]
    assert split2.pi[fine.cone_index([0])] == coarse.cone_index([0])
    assert split2.is_order_preserving()
    assert not split2.is_identity()


def test_preimage_of_a_ray_is_the_ray(split2):
    ray = split2.coarse.cone_index([0])
    assert split2.preimage(ray) == frozenset({split2.fine.zero, split2.fine.cone_index([0])})


def test_partial_cover_is_a_support_mismatch(cone2):
    half = cyclic_fan([[1, 0], [1, 1]], 'half', closed=False)
    with pytest.raises(SupportMismatch):
        build_subdivision(half, cone2)


def test_ray_outside_the_support(cone2):
    outside = cone([[1, 0], [-1, 1]], 'outside')
    with pytest.raises(SupportMismatch):
        build_subdivision(outside, cone2)


def test_fine_cone_across_two_coarse_cones(complete4):
    wide = cyclic_fan([[1, -1], [1, 1], [-1, 1], [-1, -1]], 'wide')
    with pytest.raises((NotARefinement, SupportMismatch)):
        build_subdivision(wide, complete4)


def test_identity_subdivision(complete4):
    pi = identity_subdivision(complete4)
    assert pi.is_identity()
    assert pi.pi == tuple(range(len(complete4)))


def test_simplicial_refinement_adds_no_rays(square_cone):
    pi = simplicial_refinement(square_cone)
    assert pi.fine.rays == square_cone.rays
    assert pi.fine.is_simplicial()
    assert len(pi.fine.maximal) == 2


def test_simplicial_fans_refine_to_themselves(complete5):
    assert simplicial_refinement(complete5).is_identity()


def test_coarser_fine_fan_is_not_a_refinement(cone2, split2):
    with pytest.raises(NotARefinement) as info:
        build_subdivision(cone2, split2.fine)
    assert info.value.context['cone'] == [[1, 0], [0, 1]]
