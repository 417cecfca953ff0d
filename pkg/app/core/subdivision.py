"""
Fan Subdivisions
================
Refinements Σ -> Δ with the smallest-containing-cone map, support
certificates and deterministic simplicial refinements.
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, FrozenSet, List, Tuple

from .errors import NotARefinement, SupportMismatch
from .fan import Fan, build_fan
from .geometry import normalized_volume, pulling_triangulation
from .logging_utils import get_logger

logger = get_logger('subdivision')


@dataclass
class FanSubdivision:
    """A refinement: every fine cone mapped to the smallest coarse cone containing it."""
    fine: Fan
    coarse: Fan
    pi: Tuple[int, ...]

    def preimage(self, coarse_cone: int) -> FrozenSet[int]:
        """π⁻¹⟨σ⟩ = {ρ : π(ρ) ≤ σ} as fine cone indices."""
        faces = set(self.coarse.faces[coarse_cone])
        return frozenset(i for i, target in enumerate(self.pi) if target in faces)

    def preimage_fan(self, coarse_cone: int) -> Fan:
        return self.fine.subfan(self.preimage(coarse_cone),
                                label=f"preimage({self.coarse.label or 'coarse'}, {coarse_cone})")

    def is_identity(self) -> bool:
        return len(self.fine.cones) == len(self.coarse.cones) and \
            all(self.coarse.cones[self.pi[i]].dim == c.dim for i, c in enumerate(self.fine.cones))

    def is_order_preserving(self) -> bool:
        for i in range(len(self.fine.cones)):
            for j in self.fine.faces[i]:
                if self.pi[j] not in self.coarse.faces[self.pi[i]]:
                    return False
        return True

    def to_dict(self) -> dict:
        return {
            'coarse': self.coarse.to_dict(),
            'fine': self.fine.to_dict(),
            'pi': {str(i): p for i, p in enumerate(self.pi)},
        }


def _containing_cones(coarse: Fan, point) -> FrozenSet[int]:
    return frozenset(c.index for c in coarse.cones if coarse.geometry(c.index).contains(point))


def build_subdivision(fine: Fan, coarse: Fan) -> FanSubdivision:
    """Compute π and certify |Σ| = |Δ| cone by cone."""
    if fine.ambient_dim != coarse.ambient_dim:
        raise SupportMismatch("ambient dimensions differ", fine=fine.ambient_dim, coarse=coarse.ambient_dim)

    holders: Dict[int, FrozenSet[int]] = {}
    for r, ray in enumerate(fine.rays):
        holders[r] = _containing_cones(coarse, ray)
        if not holders[r]:
            raise SupportMismatch("a fine ray lies outside the coarse support", ray=list(ray))

    everything = frozenset(c.index for c in coarse.cones)
    pi: List[int] = []
    for cone in fine.cones:
        candidates = everything
        for r in cone.rays:
            candidates = candidates & holders[r]
        if not candidates:
            raise NotARefinement([list(fine.rays[r]) for r in cone.rays])
        pi.append(min(candidates, key=lambda c: (coarse.cones[c].dim, c)))

    _certify_support(fine, coarse, pi)
    subdivision = FanSubdivision(fine=fine, coarse=coarse, pi=tuple(pi))
    logger.debug(f"[Subdivision] {fine!r} -> {coarse!r}")
    return subdivision


def _certify_support(fine: Fan, coarse: Fan, pi: List[int]):
    """Per coarse maximal cone, the fine cones mapping onto it fill the same volume."""
    for m in coarse.maximal:
        frame = coarse.geometry(m)
        if frame.dim == 0:
            continue
        target = normalized_volume(
            pulling_triangulation(coarse.cones[m].rays, coarse.rays, coarse.ambient_dim), coarse.rays, frame)
        covered = Fraction(0)
        for f in fine.maximal:
            if pi[f] == m and fine.cones[f].dim == frame.dim:
                simplices = pulling_triangulation(fine.cones[f].rays, fine.rays, fine.ambient_dim)
                covered += normalized_volume(simplices, fine.rays, frame)
        if covered != target:
            raise SupportMismatch("fine cones do not cover a coarse cone", cone=list(coarse.cones[m].rays),
                                  covered=covered, expected=target)


def identity_subdivision(fan: Fan) -> FanSubdivision:
    return FanSubdivision(fine=fan, coarse=fan, pi=tuple(range(len(fan.cones))))


def simplicial_refinement(fan: Fan) -> FanSubdivision:
    """Pulling triangulation of every cone at its lowest-index ray; no new rays."""
    if fan.is_simplicial():
        return identity_subdivision(fan)
    simplices = set()
    for m in fan.maximal:
        simplices.update(pulling_triangulation(fan.cones[m].rays, fan.rays, fan.ambient_dim))
    fine = build_fan(fan.rays, sorted(simplices), ambient_dim=fan.ambient_dim, certify=False,
                     label=f"refined({fan.label or 'fan'})")
    return build_subdivision(fine, fan)
