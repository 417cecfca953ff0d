"""
Flag Counts and cd-Indices
==========================
Flag f-vectors, ab-indices, cd-indices (complete and with boundary), local
cd-indices and the mixed cd-index of a subdivision.

Everything works on a "poset view" of a fan: a set of member cones above a
root cone, ranked by dimension relative to the root. The same code then
serves whole fans, preimage fans π⁻¹⟨σ⟩ and links.
"""

from dataclasses import dataclass
from typing import Dict, FrozenSet, Iterable, List, Optional, Tuple

from .fan import Fan
from .logging_utils import get_logger
from .ncpoly import NCPolynomial, TensorNCPolynomial, ab_to_cd
from .subdivision import FanSubdivision

logger = get_logger('cdindex')


@dataclass(frozen=True)
class FlagVector:
    """f_S for every S ⊆ {1..n}; f_∅ = 1."""
    rank: int
    counts: Dict[FrozenSet[int], int]

    def __getitem__(self, subset: Iterable[int]) -> int:
        return self.counts.get(frozenset(subset), 0)

    def to_dict(self) -> dict:
        def key(s):
            return '{' + ','.join(str(i) for i in sorted(s)) + '}'
        ordered = sorted(self.counts, key=lambda s: (len(s), sorted(s)))
        return {key(s): self.counts[s] for s in ordered}


# =============================================================================
# POSET VIEWS OF A FAN
# =============================================================================

@dataclass(frozen=True)
class _View:
    fan: Fan
    root: int
    members: FrozenSet[int]
    rank: int

    def level(self, cone: int) -> int:
        return self.fan.cones[cone].dim - self.fan.cones[self.root].dim

    def below(self, cone: int) -> List[int]:
        return [c for c in self.fan.faces[cone] if c in self.members and c != cone]

    def boundary(self) -> Optional['_View']:
        """Rank n-1 members in exactly one rank-n member, closed downwards; None when empty."""
        n = self.rank
        if n <= 0:
            return None
        tops = [c for c in self.members if self.level(c) == n]
        qualifying = [c for c in self.members if self.level(c) == n - 1
                      and sum(1 for t in tops if c in self.fan.faces[t]) == 1]
        if not qualifying:
            return None
        closed = set()
        for c in qualifying:
            closed.update(f for f in self.fan.faces[c] if f in self.members)
        return _View(self.fan, self.root, frozenset(closed), n - 1)


def _whole(fan: Fan) -> _View:
    fan.require_pure()
    return _View(fan, fan.zero, frozenset(range(len(fan.cones))), max(fan.dim, 0))


def _preimage(pi: FanSubdivision, sigma: int) -> _View:
    return _View(pi.fine, pi.fine.zero, pi.preimage(sigma), pi.coarse.cones[sigma].dim)


def _link(fan: Fan, sigma: int) -> _View:
    return _View(fan, sigma, frozenset(fan.star[sigma]), fan.dim - fan.cones[sigma].dim)


# =============================================================================
# FLAGS AND INDICES
# =============================================================================

def _flag_counts(view: _View) -> FlagVector:
    ordered = sorted((c for c in view.members if view.level(c) >= 1), key=lambda c: (view.level(c), c))
    ending: Dict[int, Dict[FrozenSet[int], int]] = {}
    totals: Dict[FrozenSet[int], int] = {frozenset(): 1}
    for c in ordered:
        rk = view.level(c)
        chains = {frozenset([rk]): 1}
        for below in view.below(c):
            if below not in ending:
                continue
            for s, k in ending[below].items():
                key = s | {rk}
                chains[key] = chains.get(key, 0) + k
        ending[c] = chains
        for s, k in chains.items():
            totals[s] = totals.get(s, 0) + k
    return FlagVector(rank=view.rank, counts=totals)


def _psi(view: _View) -> NCPolynomial:
    flags = _flag_counts(view)
    a_minus_b = NCPolynomial('ab', {'a': 1, 'b': -1})
    b = NCPolynomial.word('ab', 'b')
    total = NCPolynomial.zero('ab')
    for subset, count in flags.counts.items():
        word = NCPolynomial.one('ab')
        for i in range(1, view.rank + 1):
            word = word * (b if i in subset else a_minus_b)
        total = total + word * count
    return total


def _local_phi(view: _View) -> NCPolynomial:
    psi = _psi(view)
    boundary = view.boundary()
    if boundary is None:
        return ab_to_cd(psi)
    return ab_to_cd(psi - _psi(boundary) * NCPolynomial.word('ab', 'a'))


def _phi(view: _View) -> NCPolynomial:
    boundary = view.boundary()
    if boundary is None:
        return ab_to_cd(_psi(view))
    return _local_phi(view) + _phi(boundary)


def flag_f(fan: Fan) -> FlagVector:
    return _flag_counts(_whole(fan))


def ab_index(fan: Fan) -> NCPolynomial:
    """Ψ = Σ_S f_S u_S with u_S = b at positions in S and a - b elsewhere."""
    return _psi(_whole(fan))


def cd_index(fan: Fan) -> NCPolynomial:
    """Φ: ab_to_cd(Ψ) when the boundary is empty, ℓ^Φ + Φ_∂ otherwise."""
    return _phi(_whole(fan))


def local_cd_index(fan: Fan) -> NCPolynomial:
    """ℓ^Φ from Ψ_Δ = ℓ^Φ(a+b, ab+ba) + Ψ_∂Δ·a; 1 for the zero fan."""
    return _local_phi(_whole(fan))


def mixed_cd(pi: FanSubdivision) -> TensorNCPolynomial:
    """Ω = Σ_σ ℓ^Φ(π⁻¹⟨σ⟩)(c', d') ⊗ Φ(link_Δ σ)(c, d)."""
    coarse = pi.coarse
    coarse.require_pure()
    total = TensorNCPolynomial()
    for cone in coarse.cones:
        local = _local_phi(_preimage(pi, cone.index))
        if not local:
            continue
        total = total + TensorNCPolynomial.tensor(local, _phi(_link(coarse, cone.index)))
    logger.debug(f"[CD] mixed cd-index {total}")
    return total


def preimage_local_cd(pi: FanSubdivision, sigma: int) -> NCPolynomial:
    """ℓ^Φ of π⁻¹⟨σ⟩."""
    return _local_phi(_preimage(pi, sigma))


def link_cd(fan: Fan, sigma: int) -> NCPolynomial:
    return _phi(_link(fan, sigma))
