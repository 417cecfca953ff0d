"""
Convexity Witnesses
===================
Exact certificates found with floating-point linear programming.

scipy's linprog proposes a point; the point is rationalized with
Fraction.limit_denominator and every constraint is re-checked exactly.
A proposal that does not survive the exact check is reported as missing,
never as a certificate.
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
from scipy.optimize import linprog

from .config_manager import get_config
from .linalg import QMatrix, Vector, dot, to_vector, vec_add, vec_scale
from .logging_utils import get_logger

logger = get_logger('convexity')


# =============================================================================
# EXACT FEASIBILITY
# =============================================================================

@dataclass
class InequalitySystem:
    """Find z with equalities A_eq z = 0 and inequalities a·z >= b.

    Variables are free. Equalities are eliminated exactly beforehand by
    passing to a kernel basis, so only inequalities reach the solver.
    """
    nvars: int
    equalities: List[Vector]
    inequalities: List[Tuple[Vector, Fraction]]

    def feasible_point(self) -> Optional[Vector]:
        if self.nvars == 0:
            return None
        if self.equalities:
            kernel = QMatrix(self.equalities, self.nvars).kernel()
        else:
            kernel = [tuple(Fraction(1 if i == j else 0) for j in range(self.nvars)) for i in range(self.nvars)]
        if not kernel:
            ok = all(b <= 0 for _, b in self.inequalities)
            return tuple(Fraction(0) for _ in range(self.nvars)) if ok else None
        reduced = [(tuple(dot(a, k) for k in kernel), b) for a, b in self.inequalities]
        y = _solve_inequalities(len(kernel), reduced)
        if y is None:
            return None
        z = tuple(Fraction(0) for _ in range(self.nvars))
        for coeff, k in zip(y, kernel):
            if coeff:
                z = vec_add(z, vec_scale(coeff, k))
        if all(dot(a, z) == 0 for a in self.equalities) and all(dot(a, z) >= b for a, b in self.inequalities):
            return z
        logger.warning("[Convexity] rationalized solution failed the exact check")
        return None


def _solve_inequalities(nvars: int, rows: List[Tuple[Vector, Fraction]]) -> Optional[Vector]:
    """a·y >= b for every row, with a margin so rounding stays feasible."""
    if not rows:
        return tuple(Fraction(0) for _ in range(nvars))
    config = get_config()
    solver = config.get('convexity', 'solver', default='highs')
    max_den = int(config.get('convexity', 'max_denominator', default=10 ** 6))

    a_ub = -np.array([[float(x) for x in a] for a, _ in rows], dtype=float)
    b_ub = -np.array([2.0 * float(b) for _, b in rows], dtype=float)
    c = np.zeros(nvars, dtype=float)
    bounds = [(None, None)] * nvars
    res = linprog(c, A_ub=a_ub, b_ub=b_ub, bounds=bounds, method=solver)
    if not res.success:
        logger.debug(f"[Convexity] linprog: {res.message}")
        return None
    y = tuple(Fraction(float(x)).limit_denominator(max_den) for x in res.x)
    if all(dot(a, y) >= b for a, b in rows):
        return y
    # retry on a fixed denominator grid
    scaled = tuple(Fraction(round(float(x) * max_den), max_den) for x in res.x)
    if all(dot(a, scaled) >= b for a, b in rows):
        return scaled
    logger.warning("[Convexity] rationalized solution violates a constraint")
    return None


# =============================================================================
# FAN-LEVEL WITNESSES
# =============================================================================

def separating_functional(common: Sequence[Sequence], first: Sequence[Sequence],
                          second: Sequence[Sequence], ambient: int) -> Optional[Vector]:
    """h with h = 0 on `common`, h >= 1 on `first` and h <= -1 on `second`."""
    system = InequalitySystem(
        nvars=ambient,
        equalities=[to_vector(v) for v in common],
        inequalities=[(to_vector(v), Fraction(1)) for v in first]
        + [(tuple(-x for x in to_vector(v)), Fraction(1)) for v in second],
    )
    return system.feasible_point()


@dataclass
class ConewiseLinear:
    """A conewise linear function: one linear functional per maximal cone."""
    functionals: Dict[int, Vector]

    def value(self, cone: int, point: Sequence) -> Fraction:
        return dot(self.functionals[cone], to_vector(point))

    def to_dict(self) -> dict:
        return {str(k): [str(x) for x in v] for k, v in sorted(self.functionals.items())}


def _walls(fan, cones: Sequence[int]):
    """Pairs of maximal cones sharing a codimension-one face."""
    top = fan.dim
    out = []
    for a_pos, a in enumerate(cones):
        for b in cones[a_pos + 1:]:
            meet = fan.meet(a, b)
            if meet is not None and fan.cones[meet].dim == top - 1:
                out.append((a, b, meet))
    return out


def _conewise_system(fan, cones: Sequence[int], walls) -> Tuple[int, List[Vector], List[Tuple[Vector, Fraction]], Dict[int, int]]:
    """Variables: one functional per listed maximal cone, concatenated."""
    d = fan.ambient_dim
    offset = {c: i * d for i, c in enumerate(cones)}
    nvars = d * len(cones)
    equalities: List[Vector] = []
    for a_pos, a in enumerate(cones):
        for b in cones[a_pos + 1:]:
            shared = set(fan.cones[a].rays) & set(fan.cones[b].rays)
            for r in sorted(shared):
                row = [Fraction(0)] * nvars
                ray = fan.rays[r]
                for i in range(d):
                    row[offset[a] + i] += ray[i]
                    row[offset[b] + i] -= ray[i]
                equalities.append(tuple(row))
    inequalities: List[Tuple[Vector, Fraction]] = []
    for a, b, meet in walls:
        wall_rays = set(fan.cones[meet].rays)
        for this, other in ((a, b), (b, a)):
            for r in fan.cones[other].rays:
                if r in wall_rays:
                    continue
                # f_other(u) > f_this(u) for rays u of `other` off the wall
                row = [Fraction(0)] * nvars
                ray = fan.rays[r]
                for i in range(d):
                    row[offset[other] + i] += ray[i]
                    row[offset[this] + i] -= ray[i]
                inequalities.append((tuple(row), Fraction(1)))
    return nvars, equalities, inequalities, offset


def strictly_convex_function(fan) -> Optional[ConewiseLinear]:
    """A conewise linear function that bends strictly across every wall, or None."""
    cones = list(fan.maximal)
    walls = _walls(fan, cones)
    nvars, equalities, inequalities, offset = _conewise_system(fan, cones, walls)
    z = InequalitySystem(nvars, equalities, inequalities).feasible_point()
    if z is None:
        logger.warning(f"[Convexity] no strictly convex function found for {fan.label or 'fan'}")
        return None
    d = fan.ambient_dim
    return ConewiseLinear({c: tuple(z[offset[c]:offset[c] + d]) for c in cones})


def relatively_convex_function(subdivision) -> Optional[ConewiseLinear]:
    """Conewise linear on the fine fan, strictly convex across walls interior to a coarse maximal cone."""
    fine, coarse = subdivision.fine, subdivision.coarse
    cones = list(fine.maximal)
    top = coarse.dim
    walls = [(a, b, m) for a, b, m in _walls(fine, cones)
             if subdivision.pi[a] == subdivision.pi[b] and coarse.cones[subdivision.pi[a]].dim == top]
    nvars, equalities, inequalities, offset = _conewise_system(fine, cones, walls)
    z = InequalitySystem(nvars, equalities, inequalities).feasible_point()
    if z is None:
        logger.warning("[Convexity] no relatively convex function found")
        return None
    d = fine.ambient_dim
    return ConewiseLinear({c: tuple(z[offset[c]:offset[c] + d]) for c in cones})
