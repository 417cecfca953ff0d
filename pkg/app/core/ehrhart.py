"""
Ehrhart Sheaves
===============
The pure sheaf whose stalk at a simplicial cone σ is spanned by the
monomials x^λ, λ ∈ σ ∩ Z^d. It is free over the cone's ring on the Box
points of σ, each in degree G(b). Non-simplicial fans get the direct image
from their deterministic simplicial refinement.
"""

from typing import Dict, List, Optional, Tuple

from .degree_map import DegreeMap, gorenstein_degree_map
from .errors import CapTooSmall
from .fan import Fan
from .geometry import box_coefficients, box_points
from .graded import CellRing, free_module
from .linalg import QMatrix
from .logging_utils import get_logger
from .sheaf import FreeCover, PureSheafData, make_grading, pushforward
from .subdivision import simplicial_refinement

logger = get_logger('ehrhart')


def build_ehrhart_sheaf(fan: Fan, degree_map: Optional[DegreeMap] = None,
                        cap_margin: Optional[int] = None) -> PureSheafData:
    """E_Δ for a Gorenstein fan; NotGorenstein when no integral degree map exists."""
    if fan.is_simplicial():
        degree_map = degree_map or gorenstein_degree_map(fan)
        return _simplicial_ehrhart(fan, degree_map, cap_margin)
    refinement = simplicial_refinement(fan)
    degree_map = degree_map or gorenstein_degree_map(fan, refinement)
    fine = _simplicial_ehrhart(refinement.fine, degree_map.pull_back(refinement), cap_margin)
    pushed = pushforward(refinement, fine)
    pushed.label = f"E({fan.label or 'fan'})"
    pushed.metadata['refinement'] = refinement.fine.to_dict()
    logger.info(f"[Ehrhart] {fan.label or 'fan'} is not simplicial; pushed forward from its refinement")
    return pushed


def _simplicial_ehrhart(fan: Fan, degree_map: DegreeMap, cap_margin: Optional[int]) -> PureSheafData:
    grading = make_grading(fan, 'Ehrhart', cap_margin)
    sheaf = PureSheafData(fan=fan, structure='Ehrhart', grading=grading, label=f"E({fan.label or 'fan'})")
    boxes: Dict[int, List[Tuple[int, ...]]] = {}
    for cone in fan.cones:
        rays = fan.ray_vectors(cone.index)
        if cone.is_zero:
            boxes[cone.index] = [tuple(0 for _ in range(fan.ambient_dim))]
            action = QMatrix.zeros(fan.ambient_dim, 0)
        else:
            boxes[cone.index] = box_points(rays)
            action = QMatrix.from_columns(rays, fan.ambient_dim)
        degrees = [int(degree_map.value_on(cone.index, b)) for b in boxes[cone.index]]
        for b, deg in zip(boxes[cone.index], degrees):
            if grading.is_sentinel(deg):
                raise CapTooSmall(cone.index, deg)
        ring = CellRing(grading=grading, action=action, structure='A')
        free = free_module(ring, degrees)
        sheaf.stalks[cone.index] = free.presentation
        sheaf.covers[cone.index] = FreeCover(free=free, images={})
        sheaf.flabby[cone.index] = True

    for cone in fan.cones:
        for facet in fan.facets[cone.index]:
            sheaf.restrictions[(cone.index, facet)] = _facet_restriction(sheaf, fan, boxes, cone.index, facet)
    return sheaf


def _facet_restriction(sheaf: PureSheafData, fan: Fan, boxes, tau: int, facet: int):
    """x^λ ↦ x^λ when λ lies in the facet, 0 otherwise."""
    rays = fan.cones[tau].rays
    missing = next(k for k, r in enumerate(rays) if r not in fan.cones[facet].rays)
    facet_box = {b: i for i, b in enumerate(boxes[facet])}
    big = sheaf.covers[tau].free
    small = sheaf.covers[facet].free
    in_facet = {}
    for i, b in enumerate(boxes[tau]):
        if rays and box_coefficients(fan.ray_vectors(tau), b)[missing] != 0:
            continue
        in_facet[i] = facet_box[b]
    out = {}
    for deg in sheaf.grading.degrees():
        rows = [[0] * len(big.labels[deg]) for _ in small.labels[deg]]
        for col, (b, alpha) in enumerate(big.labels[deg]):
            if b not in in_facet or alpha[missing]:
                continue
            reduced = alpha[:missing] + alpha[missing + 1:]
            row = small.index[deg].get((in_facet[b], reduced))
            if row is not None:
                rows[row][col] = 1
        out[deg] = QMatrix(rows, len(big.labels[deg]))
    return out
