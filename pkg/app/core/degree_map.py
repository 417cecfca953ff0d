"""
Degree Maps
===========
Conewise linear functionals that take the value 1 on every primitive ray
generator, with integrality certified on Box points of a simplicial
refinement.
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence

from .errors import DegreeMapMismatch, NotGorenstein, ParseError
from .fan import Fan
from .geometry import box_points
from .linalg import QMatrix, Vector, dot, solve_linear, to_vector
from .logging_utils import get_logger
from .subdivision import FanSubdivision, simplicial_refinement

logger = get_logger('degree_map')


@dataclass
class DegreeMap:
    """One linear functional per maximal cone of `fan`."""
    fan: Fan
    functionals: Dict[int, Vector]

    def functional_for(self, cone: int) -> Vector:
        """Functional of the lowest-index maximal cone containing `cone`."""
        for m in self.fan.maximal:
            if m in self.fan.star[cone]:
                return self.functionals[m]
        raise KeyError(cone)

    def value_on(self, cone: int, point: Sequence) -> Fraction:
        return dot(self.functional_for(cone), to_vector(point))

    def agrees_on_shared_faces(self) -> bool:
        """Adjacent functionals coincide on every ray of the common face."""
        tops = list(self.fan.maximal)
        for i, a in enumerate(tops):
            for b in tops[i + 1:]:
                shared = set(self.fan.cones[a].rays) & set(self.fan.cones[b].rays)
                for r in shared:
                    ray = self.fan.rays[r]
                    if dot(self.functionals[a], ray) != dot(self.functionals[b], ray):
                        return False
        return True

    def pull_back(self, subdivision: FanSubdivision) -> 'DegreeMap':
        """The same conewise functional seen on the fine fan."""
        if subdivision.coarse is not self.fan:
            raise ValueError("subdivision does not refine this fan")
        fine = subdivision.fine
        pulled = {m: self.functional_for(subdivision.pi[m]) for m in fine.maximal}
        return DegreeMap(fan=fine, functionals=pulled)

    def to_dict(self) -> dict:
        return {
            'functionals': [[str(x) for x in self.functionals[m]] for m in self.fan.maximal],
        }

    @classmethod
    def from_dict(cls, fan: Fan, data) -> 'DegreeMap':
        """Read the per-maximal-cone list (in the fan's maximal-cone order) and validate it."""
        rows = data.get('functionals', data) if isinstance(data, dict) else data
        if len(rows) != len(fan.maximal):
            raise ParseError(f"degree_map has {len(rows)} functionals for {len(fan.maximal)} maximal cones")
        for row in rows:
            if len(row) != fan.ambient_dim:
                raise ParseError(f"degree_map functional {row} has length {len(row)}, expected {fan.ambient_dim}")
        degree_map = cls(fan=fan, functionals={m: to_vector(row) for m, row in zip(fan.maximal, rows)})
        degree_map.validate()
        return degree_map

    def validate(self, refinement: Optional[FanSubdivision] = None):
        """Value 1 on every ray of every maximal cone, integral on lattice points."""
        for m in self.fan.maximal:
            for r in self.fan.cones[m].rays:
                value = dot(self.functionals[m], self.fan.rays[r])
                if value != 1:
                    raise DegreeMapMismatch(self.fan.rays[r], str(value))
        certify_integrality(self, refinement)


def gorenstein_degree_map(fan: Fan, refinement: Optional[FanSubdivision] = None) -> DegreeMap:
    """The unique conewise G with G(ray) = 1, certified integral on lattice points."""
    functionals: Dict[int, Vector] = {}
    for m in fan.maximal:
        rays = fan.ray_vectors(m)
        if not rays:
            functionals[m] = tuple(Fraction(0) for _ in range(fan.ambient_dim))
            continue
        solution = solve_linear(QMatrix(rays, fan.ambient_dim), [1] * len(rays))
        if not solution.feasible:
            raise NotGorenstein(m)
        functionals[m] = solution.particular
    degree_map = DegreeMap(fan=fan, functionals=functionals)
    certify_integrality(degree_map, refinement)
    return degree_map


def certify_integrality(degree_map: DegreeMap, refinement: Optional[FanSubdivision] = None):
    """G is integral on every Box point of every simplicial cone of a refinement."""
    fan = degree_map.fan
    refinement = refinement or simplicial_refinement(fan)
    fine = refinement.fine
    for m in fine.maximal:
        coarse = refinement.pi[m]
        for b in box_points(fine.ray_vectors(m)):
            value = degree_map.value_on(coarse, b)
            if value.denominator != 1:
                owner = next(c for c in fan.maximal if c in fan.star[coarse])
                raise NotGorenstein(owner, witness=list(b), value=str(value))


def check_same_degree_map(subdivision: FanSubdivision, degree_map: DegreeMap):
    """The coarse degree map must take the value 1 on every fine ray."""
    fine = subdivision.fine
    for r, ray in enumerate(fine.rays):
        cone = fine.cone_index([r])
        value = degree_map.value_on(subdivision.pi[cone], ray)
        if value != 1:
            raise DegreeMapMismatch(ray, str(value))


def box_degrees(rays: Sequence[Sequence[int]], functional: Vector) -> List[int]:
    """G(b) for each Box point of a simplicial cone, in Box order."""
    return [int(dot(functional, b)) for b in box_points(rays)]
