import pytest

from app.core.config_manager import get_config
from app.core.corpus import cone
from app.core.errors import CapTooSmall, DimensionLimitExceeded
from app.core.graded import reduce_mod_m
from app.core.polynomials import t_poly
from app.core.sheaf import (
    braden_degree_bounds,
    build_simple_sheaf,
    decompose,
    global_sections,
    pushforward,
    relative_sections,
    shift_sheaf,
    simple_sheaf,
    t_poincare,
)


def _sections_poincare(fan, base=0, structure='A'):
    return global_sections(simple_sheaf(fan, base, structure)).poincare()


def test_minimal_extension_sections_count_h(complete4, cone2, square_cone):
    assert _sections_poincare(complete4) == t_poly(1, 2, 1)
    assert _sections_poincare(cone2) == t_poly(1)
    assert _sections_poincare(square_cone) == t_poly(1, 1)


def test_simple_sheaf_is_zero_off_the_star(complete4):
    ray = complete4.cone_index([0])
    sheaf = simple_sheaf(complete4, ray, 'A')
    other = complete4.cone_index([2])
    assert sheaf.stalks[other].is_zero()
    assert sheaf.stalks[complete4.zero].is_zero()
    assert not sheaf.stalks[ray].is_zero()


def test_c_structure_t_poincare(complete4, cone2):
    assert t_poincare(simple_sheaf(complete4, complete4.zero, 'C')) == t_poly(1, 3, 3, 1)
    c_sheaf = simple_sheaf(cone2, cone2.zero, 'C')
    assert t_poincare(c_sheaf) == t_poly(1, 1)
    assert t_poincare(c_sheaf, 'relative') == t_poly(0, 0, 1, 1)


def test_unknown_t_poincare_selector(cone2):
    with pytest.raises(ValueError):
        t_poincare(simple_sheaf(cone2, cone2.zero, 'C'), 'stalks')


def test_simple_sheaves_are_flabby_and_generated_low(complete4, square_cone):
    for fan in (complete4, square_cone):
        for c in fan.cones:
            sheaf = simple_sheaf(fan, c.index, 'A')
            assert sheaf.is_flabby()
            assert braden_degree_bounds(sheaf)


def test_pushforward_decomposes_into_local_h(split2):
    pushed = pushforward(split2, simple_sheaf(split2.fine, split2.fine.zero, 'A'))
    data = decompose(pushed, check=True)
    coarse = split2.coarse
    top = coarse.maximal[0]
    assert data.local_poincare[coarse.zero] == t_poly(1)
    assert data.local_poincare[top] == t_poly(0, 1)
    assert not data.local_poincare[coarse.cone_index([0])]
    assert sorted((s.cone, s.shift, s.multiplicity) for s in data.summands) == [(coarse.zero, 0, 1), (top, 1, 1)]
    assert global_sections(pushed).poincare() == t_poly(1, 1)


def test_pushforward_of_the_square_split(square_split):
    pushed = pushforward(square_split, simple_sheaf(square_split.fine, square_split.fine.zero, 'A'))
    assert global_sections(pushed).poincare() == t_poly(1, 1)
    assert pushed.is_flabby()


def test_sheaf_dump_lists_generator_degrees(cone2):
    dump = simple_sheaf(cone2, cone2.zero, 'A').to_dict()
    assert dump['structure'] == 'A'
    assert [entry['generator_degrees'] for entry in dump['cones']] == [[0], [0], [0], [0]]


def test_dimension_limit_is_enforced():
    limit = get_config().dimension_limit('C')
    rays = [[1 if i == j else 0 for j in range(limit + 1)] for i in range(limit + 1)]
    with pytest.raises(DimensionLimitExceeded):
        build_simple_sheaf(cone(rays, 'too-big'), 0, 'C')


def test_stalks_reduce_to_their_generators(cone2, square_cone):
    top = square_cone.maximal[0]
    reduced = reduce_mod_m(simple_sheaf(square_cone, square_cone.zero, 'A').stalks[top], cone=top)
    assert reduced.poincare() == t_poly(1, 1)
    assert reduced.generator_degrees() == [0, 1]
    assert reduce_mod_m(simple_sheaf(cone2, cone2.zero, 'A').stalks[cone2.maximal[0]]).poincare() == t_poly(1)


def test_relative_sections_of_a_cone_are_multiples_of_xy(cone2):
    sheaf = simple_sheaf(cone2, cone2.zero, 'A')
    presentation, inclusion = relative_sections(sheaf)
    assert presentation.dim(0) == presentation.dim(1) == 0
    assert presentation.dim(2) == 1
    assert set(inclusion) == set(sheaf.grading.degrees())
    assert reduce_mod_m(presentation, check_cap=False).poincare() == t_poly(0, 0, 1)
    assert t_poincare(sheaf, 'relative') == t_poly(0, 0, 1)


def test_relative_sections_of_a_complete_fan_are_all_sections(complete4):
    sheaf = simple_sheaf(complete4, complete4.zero, 'A')
    assert t_poincare(sheaf, 'relative') == t_poincare(sheaf) == t_poly(1, 2, 1)


def test_shift_past_the_cap_is_rejected(cone2):
    sheaf = simple_sheaf(cone2, cone2.zero, 'A')
    cap = sheaf.grading.cap
    assert shift_sheaf(sheaf, 1).shift == 1
    with pytest.raises(CapTooSmall) as info:
        shift_sheaf(sheaf, cap)
    assert info.value.context['degree'] == cap
