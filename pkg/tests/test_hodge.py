from app.core.hodge import (
    HODGE_DELIGNE_TO_POINCARE,
    filtered_space,
    hard_lefschetz_check,
    hodge_deligne,
    hodge_deligne_of_summands,
    limit_hodge_deligne,
    relative_hard_lefschetz_check,
    t_poincare_recursion_check,
)
from app.core.polynomials import T, UV, InvariantPolynomial, t_poly, uv_monomial
from app.core.sheaf import global_sections, pushforward, shift_sheaf, simple_sheaf
from app.core.weights import weight_sheaf


def test_hodge_deligne_of_a_complete_fan(complete4):
    hd = hodge_deligne(simple_sheaf(complete4, complete4.zero, 'A'))
    assert hd == InvariantPolynomial.one(UV) + uv_monomial(1, 1, 2) + uv_monomial(2, 2)
    assert hd.monomial_substitute(HODGE_DELIGNE_TO_POINCARE, T) == t_poly(1, 2, 1)


def test_hodge_deligne_of_the_split_direct_image(split2):
    pushed = pushforward(split2, simple_sheaf(split2.fine, split2.fine.zero, 'A'))
    assert hodge_deligne(pushed) == InvariantPolynomial.one(UV) + uv_monomial(1, 1)


def test_filtered_space_is_consistent(complete5):
    space = filtered_space(simple_sheaf(complete5, complete5.zero, 'A'))
    assert space.is_consistent()
    assert space.total_dim() == 5


def test_summand_values(complete4):
    assert hodge_deligne_of_summands(complete4, [(complete4.zero, 0, 1)]) == \
        InvariantPolynomial.one(UV) + uv_monomial(1, 1, 2) + uv_monomial(2, 2)


def test_weight_filtration_is_decreasing(complete4):
    weights = weight_sheaf(simple_sheaf(complete4, complete4.zero, 'A'))
    assert weights.weight_range() == (0, 5)
    assert weights.filtration().is_monotone()


def test_c_structure_weight_range(complete4):
    assert weight_sheaf(simple_sheaf(complete4, complete4.zero, 'C')).weight_range() == (0, 7)


def test_hard_lefschetz_on_complete_fans(complete4, complete5):
    for fan in (complete4, complete5):
        result = hard_lefschetz_check(fan)
        assert result.passed, result.detail
        assert result.ranks['0'] == (1, 1)


def test_hard_lefschetz_skips_incomplete_fans(cone2):
    assert hard_lefschetz_check(cone2).status == 'skipped'


def test_relative_hard_lefschetz_on_the_split_cone(split2):
    assert relative_hard_lefschetz_check(split2).passed


def test_t_poincare_recursion(complete4, cone2):
    for fan in (complete4, cone2):
        assert t_poincare_recursion_check(fan, 'A')
        assert t_poincare_recursion_check(fan, 'C')


def test_limit_hodge_deligne_of_the_split_cone(split2):
    fine = split2.fine
    sheaf = simple_sheaf(fine, fine.zero, 'A')
    assert global_sections(pushforward(split2, sheaf)).poincare() == t_poly(1, 1)
    assert limit_hodge_deligne(split2, sheaf) == InvariantPolynomial.one(UV) + uv_monomial(1, 1)


def test_limit_hodge_deligne_of_a_shifted_skyscraper(split2):
    fine = split2.fine
    top = fine.maximal[0]
    sheaf = simple_sheaf(fine, top, 'A')
    assert global_sections(pushforward(split2, sheaf)).poincare() == t_poly(1)
    # u^j v^(dim σ - j) P(uv) with j = 1, dim σ = 2 and P = 1
    assert limit_hodge_deligne(split2, shift_sheaf(sheaf, 1)) == uv_monomial(1, 1)
    assert limit_hodge_deligne(split2, sheaf) == uv_monomial(0, 2)
