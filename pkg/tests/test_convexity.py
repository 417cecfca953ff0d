from scipy.optimize import linprog

from app.core import convexity
from app.core.convexity import relatively_convex_function, strictly_convex_function


def test_linprog_is_a_hard_dependency():
    assert convexity.linprog is linprog


def test_strictly_convex_function_on_a_complete_fan(complete4):
    ell = strictly_convex_function(complete4)
    assert ell is not None
    assert set(ell.functionals) == set(complete4.maximal)
    first, second = complete4.maximal[0], complete4.maximal[1]
    shared = complete4.meet(first, second)
    ray = complete4.rays[complete4.cones[shared].rays[0]]
    assert ell.value(first, ray) == ell.value(second, ray)


def test_relatively_convex_function_on_the_split_cone(split2):
    ell = relatively_convex_function(split2)
    assert ell is not None
    assert set(ell.functionals) == set(split2.fine.maximal)
