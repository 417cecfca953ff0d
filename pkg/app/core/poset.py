"""
Eulerian Posets
===============
Graded posets and the toric g/h recursions on their intervals.

A view is an interval [lo, hi] of a base poset, a star {x >= lo} when hi
is None, or the dual of an interval. Every view of one base poset
shares a memo table, so the g-polynomials of all intervals of a fan are
computed once.
"""

from typing import Dict, FrozenSet, Hashable, Iterable, List, Optional, Tuple

from .errors import NotEulerian
from .polynomials import T, InvariantPolynomial, t_poly

Element = Hashable


class GradedPoset:
    """Elements with ranks and down-sets (x itself included)."""

    def __init__(self, ranks: Dict[Element, int], down: Dict[Element, FrozenSet[Element]], name: str = ''):
        self.ranks = dict(ranks)
        self.down = {x: frozenset(s) for x, s in down.items()}
        self.name = name
        self._order = sorted(self.ranks, key=lambda x: (self.ranks[x], str(x)))
        self._g_memo: Dict[Tuple[Element, Element, bool], InvariantPolynomial] = {}
        self._euler_memo: Dict[Tuple[Element, Element], bool] = {}

    def leq(self, x: Element, y: Element) -> bool:
        return x in self.down[y]

    def interval(self, lo: Element, hi: Element) -> List[Element]:
        return [x for x in self._order if self.leq(lo, x) and self.leq(x, hi)]

    def star(self, lo: Element) -> List[Element]:
        return [x for x in self._order if self.leq(lo, x)]

    # -------------------------------------------------------------------------
    # Recursions
    # -------------------------------------------------------------------------

    def g(self, lo: Element, hi: Element, dual: bool = False) -> InvariantPolynomial:
        """Toric g of [lo, hi], or of its dual when dual=True."""
        key = (lo, hi, dual)
        if key in self._g_memo:
            return self._g_memo[key]
        n = self.ranks[hi] - self.ranks[lo]
        if n == 0:
            result = InvariantPolynomial.one(T)
        else:
            top = lo if dual else hi
            f = InvariantPolynomial.zero(T)
            t_minus_one = t_poly(-1, 1)
            for x in self.interval(lo, hi):
                if x == top:
                    continue
                if dual:
                    sub = self.g(x, hi, True)
                    rank = self.ranks[hi] - self.ranks[x]
                else:
                    sub = self.g(lo, x, False)
                    rank = self.ranks[x] - self.ranks[lo]
                f = f + sub * t_minus_one ** (n - 1 - rank)
            product = t_poly(1, -1) * f
            result = InvariantPolynomial(T, {e: c for e, c in product.terms.items() if 2 * e[0] < n})
        self._g_memo[key] = result
        return result

    def interval_is_eulerian(self, lo: Element, hi: Element) -> bool:
        key = (lo, hi)
        if key not in self._euler_memo:
            members = self.interval(lo, hi)
            if len(members) <= 1:
                self._euler_memo[key] = True
            else:
                self._euler_memo[key] = sum((-1) ** self.ranks[x] for x in members) == 0
        return self._euler_memo[key]


class EulerianPosetView:
    """An interval, star or dual interval of a GradedPoset."""

    def __init__(self, base: GradedPoset, lo: Element, hi: Optional[Element] = None, dual: bool = False,
                 members: Optional[Iterable[Element]] = None):
        if dual and hi is None:
            raise ValueError("only intervals have duals")
        self.base = base
        self.lo = lo
        self.hi = hi
        self.dual_flag = dual
        self.members: Optional[FrozenSet[Element]] = frozenset(members) if members is not None else None

    @property
    def bottom(self) -> Element:
        return self.hi if self.dual_flag else self.lo

    @property
    def top(self) -> Optional[Element]:
        return self.lo if self.dual_flag else self.hi

    def elements(self) -> List[Element]:
        if self.hi is None:
            found = self.base.star(self.lo)
        else:
            found = self.base.interval(self.lo, self.hi)
        if self.members is not None:
            found = [x for x in found if x in self.members]
        if self.dual_flag:
            found = list(reversed(found))
        return found

    def rank(self, x: Element) -> int:
        if self.dual_flag:
            return self.base.ranks[self.hi] - self.base.ranks[x]
        return self.base.ranks[x] - self.base.ranks[self.lo]

    def max_rank(self) -> int:
        return max((self.rank(x) for x in self.elements()), default=0)

    def dual(self) -> 'EulerianPosetView':
        return EulerianPosetView(self.base, self.lo, self.hi, not self.dual_flag, self.members)

    def lower_interval(self, x: Element) -> Tuple[Element, Element, bool]:
        """[bottom, x] of this view as a (lo, hi, dual) key of the base poset."""
        if self.dual_flag:
            return x, self.hi, True
        return self.lo, x, False

    def is_eulerian(self) -> bool:
        """Every nontrivial interval has as many even-rank as odd-rank elements."""
        members = self.elements()
        for i, x in enumerate(members):
            for y in members[i + 1:]:
                lo, hi = (y, x) if self.dual_flag else (x, y)
                if self.base.leq(lo, hi) and lo != hi and not self.base.interval_is_eulerian(lo, hi):
                    return False
        return True

    def require_eulerian(self):
        members = self.elements()
        for i, x in enumerate(members):
            for y in members[i + 1:]:
                lo, hi = (y, x) if self.dual_flag else (x, y)
                if self.base.leq(lo, hi) and lo != hi and not self.base.interval_is_eulerian(lo, hi):
                    raise NotEulerian(str(lo), str(hi))

    def g(self) -> InvariantPolynomial:
        if self.top is None:
            raise ValueError("toric g needs a top element")
        self.require_eulerian()
        return self.base.g(self.lo, self.hi, self.dual_flag)

    def h(self, n: Optional[int] = None) -> InvariantPolynomial:
        """t^n Σ_x g([bottom, x]; 1/t)(1/t - 1)^(n - rk x), i.e. the toric h of a star view."""
        if n is None:
            n = self.max_rank()
        rhs = InvariantPolynomial.zero(T)
        t_minus_one = t_poly(-1, 1)
        for x in self.elements():
            lo, hi, dual = self.lower_interval(x)
            rhs = rhs + self.base.g(lo, hi, dual) * t_minus_one ** (n - self.rank(x))
        return rhs.reciprocal(n)


# =============================================================================
# FAN POSETS
# =============================================================================

def fan_poset(fan) -> GradedPoset:
    """Face poset of a fan (ranks are cone dimensions), cached on the fan."""
    cached = getattr(fan, '_poset', None)
    if cached is None:
        ranks = {c.index: c.dim for c in fan.cones}
        down = {c.index: frozenset(fan.faces[c.index]) for c in fan.cones}
        cached = GradedPoset(ranks, down, name=fan.label or '')
        fan._poset = cached
    return cached


def cone_view(fan, cone: int) -> EulerianPosetView:
    """Face poset of ⟨σ⟩ as the interval [o, σ]."""
    return EulerianPosetView(fan_poset(fan), fan.zero, cone)


def star_view(fan, cone: int, members: Optional[Iterable[int]] = None) -> EulerianPosetView:
    """Poset of link_Δ σ: the cones τ >= σ, optionally restricted to a subfan."""
    return EulerianPosetView(fan_poset(fan), cone, None, members=members)


def dual_interval(fan, lo: int, hi: int) -> EulerianPosetView:
    return EulerianPosetView(fan_poset(fan), lo, hi, dual=True)
