"""
Combinatorial Invariants
========================
Toric g/h, local h, mixed h and the Ehrhart-side invariants (h*, local h*,
mixed, limit and refined h*) computed from face posets and lattice-point
counts only. Nothing here touches the sheaf engine.
"""

from dataclasses import dataclass, field
from math import comb
from typing import Dict, FrozenSet, List, Optional

from .degree_map import DegreeMap, check_same_degree_map, gorenstein_degree_map
from .errors import EhrhartNumeratorDegree, TargetNotSingleCone
from .fan import Fan
from .geometry import box_coefficients, box_points
from .logging_utils import get_logger
from .polynomials import T, UV, UVW, InvariantPolynomial, evaluate_t_at_monomial, t_poly, uv_monomial
from .poset import EulerianPosetView, fan_poset, star_view
from .subdivision import FanSubdivision, simplicial_refinement

logger = get_logger('invariants')


def _at(poly: InvariantPolynomial, target, exponent) -> InvariantPolynomial:
    return evaluate_t_at_monomial(poly, target, exponent)


def _lift_uv(poly: InvariantPolynomial) -> InvariantPolynomial:
    return poly.monomial_substitute({'u': {'u': 1}, 'v': {'v': 1}}, UVW)


# =============================================================================
# TORIC g AND h
# =============================================================================

def toric_g(poset: EulerianPosetView) -> InvariantPolynomial:
    """g of a graded poset with top element (cones, dual intervals, links)."""
    return poset.g()


def toric_h(fan: Fan) -> InvariantPolynomial:
    fan.require_pure()
    if not fan.cones:
        return InvariantPolynomial.zero(T)
    return star_view(fan, fan.zero).h(max(fan.dim, 0))


def link_h(fan: Fan, sigma: int) -> InvariantPolynomial:
    """h(link_Δ σ) read off the star of σ in the face poset."""
    return star_view(fan, sigma).h(fan.dim - fan.cones[sigma].dim)


def _local_h_core(pi: FanSubdivision, froot: int, croot: int, ctop: int) -> InvariantPolynomial:
    """Local h of link_Σ froot -> link_⟨ctop⟩ croot, the ordinary one when both roots are o."""
    fine, coarse = pi.fine, pi.coarse
    fine_poset, coarse_poset = fan_poset(fine), fan_poset(coarse)
    base_dim = fine.cones[froot].dim
    top_dim = coarse.cones[ctop].dim
    total = InvariantPolynomial.zero(T)
    for gamma in coarse_poset.interval(croot, ctop):
        allowed = set(coarse.faces[gamma])
        members = [rho for rho in fine.star[froot] if pi.pi[rho] in allowed]
        n = coarse.cones[gamma].dim - base_dim
        h = EulerianPosetView(fine_poset, froot, None, members=members).h(n)
        sign = (-1) ** (top_dim - coarse.cones[gamma].dim)
        total = total + h * coarse_poset.g(gamma, ctop, dual=True) * sign
    return total


def local_h(pi: FanSubdivision, sigma: Optional[int] = None) -> InvariantPolynomial:
    """ℓ^h of π⁻¹⟨σ⟩ -> ⟨σ⟩; without σ the target must be a single-cone fan."""
    coarse = pi.coarse
    if sigma is None:
        if len(coarse.maximal) != 1:
            raise TargetNotSingleCone(len(coarse.maximal))
        sigma = coarse.maximal[0]
    result = _local_h_core(pi, pi.fine.zero, coarse.zero, sigma)
    if not result.is_symmetric(coarse.cones[sigma].dim):
        logger.warning(f"[Invariants] local h {result} of cone {sigma} is not symmetric")
    return result


def link_local_h(pi: FanSubdivision, rho: int, sigma: int) -> InvariantPolynomial:
    """ℓ^h of link_Σ ρ -> link_⟨σ⟩ π(ρ) for a fine cone ρ with π(ρ) ≤ σ."""
    return _local_h_core(pi, rho, pi.pi[rho], sigma)


def mixed_h(pi: FanSubdivision) -> InvariantPolynomial:
    """Σ_σ v^dim σ ℓ^h(π⁻¹⟨σ⟩; uv⁻¹) h(link_Δ σ; uv)."""
    coarse = pi.coarse
    coarse.require_pure()
    total = InvariantPolynomial.zero(UV)
    for cone in coarse.cones:
        local = _local_h_core(pi, pi.fine.zero, coarse.zero, cone.index)
        if not local:
            continue
        total = total + uv_monomial(0, cone.dim) * _at(local, UV, (1, -1)) \
            * _at(link_h(coarse, cone.index), UV, (1, 1))
    return total.require_polynomial()


# =============================================================================
# LATTICE-POINT COUNTS
# =============================================================================

@dataclass
class EhrhartTable:
    """Lattice points by degree per cone of a simplicial refinement, and the h* they give."""
    fan: Fan
    degree_map: DegreeMap
    refinement: FanSubdivision
    _counts: Dict[int, List[int]] = field(default_factory=dict)
    _hstar: Dict[int, InvariantPolynomial] = field(default_factory=dict)
    _local: Dict[int, InvariantPolynomial] = field(default_factory=dict)

    @property
    def top_degree(self) -> int:
        return 2 * max(self.fan.dim, 0)

    def counts(self, rho: int) -> List[int]:
        """#{relint(ρ) ∩ Z^d with G = k} for k = 0..2 dim Δ."""
        if rho in self._counts:
            return self._counts[rho]
        fine = self.refinement.fine
        top = self.top_degree
        counts = [0] * (top + 1)
        cone = fine.cones[rho]
        if cone.is_zero:
            counts[0] = 1
        else:
            rays = fine.ray_vectors(rho)
            m = cone.dim
            owner = self.refinement.pi[rho]
            for b in box_points(rays):
                g = int(self.degree_map.value_on(owner, b))
                zeros = sum(1 for x in box_coefficients(rays, b) if x == 0)
                for k in range(top + 1):
                    free = k - g - zeros
                    if free >= 0:
                        counts[k] += comb(free + m - 1, m - 1)
        self._counts[rho] = counts
        return counts

    def series(self, cones: FrozenSet[int]) -> InvariantPolynomial:
        totals = [0] * (self.top_degree + 1)
        for rho in sorted(cones):
            for k, c in enumerate(self.counts(rho)):
                totals[k] += c
        return InvariantPolynomial.from_coefficients(totals)

    def hstar(self, cone: int) -> InvariantPolynomial:
        """h*(⟨τ⟩) from the counts over π⁻¹⟨τ⟩."""
        if cone not in self._hstar:
            n = self.fan.cones[cone].dim
            self._hstar[cone] = self._numerator(self.refinement.preimage(cone), n)
        return self._hstar[cone]

    def hstar_of_fan(self) -> InvariantPolynomial:
        everything = frozenset(range(len(self.refinement.fine.cones)))
        return self._numerator(everything, max(self.fan.dim, 0))

    def _numerator(self, cones: FrozenSet[int], n: int) -> InvariantPolynomial:
        product = t_poly(1, -1) ** n * self.series(cones)
        for k in range(n + 1, 2 * n + 1):
            if product.coefficient(k):
                raise EhrhartNumeratorDegree(k, n)
        return product.truncate(n)

    def local(self, cone: int) -> InvariantPolynomial:
        """ℓ*(⟨σ⟩) = Σ_τ h*(⟨τ⟩)(-1)^(dim σ - dim τ) g(dual [τ, σ])."""
        if cone in self._local:
            return self._local[cone]
        poset = fan_poset(self.fan)
        top = self.fan.cones[cone].dim
        total = InvariantPolynomial.zero(T)
        for tau in self.fan.faces[cone]:
            sign = (-1) ** (top - self.fan.cones[tau].dim)
            total = total + self.hstar(tau) * poset.g(tau, cone, dual=True) * sign
        if not total.is_symmetric(top):
            logger.warning(f"[Invariants] local h* {total} of cone {cone} is not symmetric")
        self._local[cone] = total
        return total


def ehrhart_table(fan: Fan, degree_map: Optional[DegreeMap] = None,
                  refinement: Optional[FanSubdivision] = None) -> EhrhartTable:
    refinement = refinement or simplicial_refinement(fan)
    degree_map = degree_map or gorenstein_degree_map(fan, refinement)
    return EhrhartTable(fan=fan, degree_map=degree_map, refinement=refinement)


def _single_cone(fan: Fan, cone: Optional[int]) -> int:
    if cone is not None:
        return cone
    if len(fan.maximal) != 1:
        raise TargetNotSingleCone(len(fan.maximal))
    return fan.maximal[0]


# =============================================================================
# h* FAMILY
# =============================================================================

def hstar(fan: Fan, degree_map: Optional[DegreeMap] = None,
          refinement: Optional[FanSubdivision] = None) -> InvariantPolynomial:
    fan.require_pure()
    return ehrhart_table(fan, degree_map, refinement).hstar_of_fan()


def local_hstar(fan: Fan, degree_map: Optional[DegreeMap] = None, cone: Optional[int] = None) -> InvariantPolynomial:
    return ehrhart_table(fan, degree_map).local(_single_cone(fan, cone))


def mixed_hstar(fan: Fan, degree_map: Optional[DegreeMap] = None) -> InvariantPolynomial:
    """Σ_σ v^dim σ ℓ*(⟨σ⟩; uv⁻¹) h(link_Δ σ; uv)."""
    fan.require_pure()
    table = ehrhart_table(fan, degree_map)
    total = InvariantPolynomial.zero(UV)
    for cone in fan.cones:
        local = table.local(cone.index)
        if not local:
            continue
        total = total + uv_monomial(0, cone.dim) * _at(local, UV, (1, -1)) \
            * _at(link_h(fan, cone.index), UV, (1, 1))
    return total.require_polynomial()


def _fine_table(pi: FanSubdivision, degree_map: Optional[DegreeMap]) -> EhrhartTable:
    coarse_map = degree_map or gorenstein_degree_map(pi.coarse)
    check_same_degree_map(pi, coarse_map)
    return ehrhart_table(pi.fine, coarse_map.pull_back(pi))


def limit_mixed_hstar(pi: FanSubdivision, degree_map: Optional[DegreeMap] = None) -> InvariantPolynomial:
    """Σ_{ρ ∈ Σ} v^dim ρ ℓ*(⟨ρ⟩; uv⁻¹) h(link_Σ ρ; uv)."""
    fine = pi.fine
    table = _fine_table(pi, degree_map)
    total = InvariantPolynomial.zero(UV)
    for cone in fine.cones:
        local = table.local(cone.index)
        if not local:
            continue
        total = total + uv_monomial(0, cone.dim) * _at(local, UV, (1, -1)) \
            * _at(link_h(fine, cone.index), UV, (1, 1))
    return total.require_polynomial()


def _local_limit(pi: FanSubdivision, table: EhrhartTable, sigma: int) -> InvariantPolynomial:
    total = InvariantPolynomial.zero(UV)
    for rho in sorted(pi.preimage(sigma)):
        star = table.local(rho)
        if not star:
            continue
        rel = link_local_h(pi, rho, sigma)
        if not rel:
            continue
        dim = pi.fine.cones[rho].dim
        total = total + uv_monomial(0, dim) * _at(star, UV, (1, -1)) * _at(rel, UV, (1, 1))
    return total.require_polynomial()


def local_limit_mixed_hstar(pi: FanSubdivision, degree_map: Optional[DegreeMap] = None,
                            sigma: Optional[int] = None) -> InvariantPolynomial:
    """Σ_{τ ∈ π⁻¹⟨σ⟩} v^dim τ ℓ*(⟨τ⟩; uv⁻¹) ℓ^h(link_Σ τ -> link_⟨σ⟩ π(τ); uv)."""
    sigma = _single_cone(pi.coarse, sigma)
    return _local_limit(pi, _fine_table(pi, degree_map), sigma)


def refined_limit_mixed_hstar(pi: FanSubdivision, degree_map: Optional[DegreeMap] = None) -> InvariantPolynomial:
    """Σ_σ w^dim σ ℓ*(⟨σ⟩, π⁻¹⟨σ⟩; u, v) h(link_Δ σ; uvw²)."""
    coarse = pi.coarse
    coarse.require_pure()
    table = _fine_table(pi, degree_map)
    total = InvariantPolynomial.zero(UVW)
    for cone in coarse.cones:
        local = _local_limit(pi, table, cone.index)
        if not local:
            continue
        weight = InvariantPolynomial.monomial(UVW, (0, 0, cone.dim))
        total = total + weight * _lift_uv(local) * _at(link_h(coarse, cone.index), UVW, (1, 1, 2))
    return total.require_polynomial()


def ehrhart_reciprocity_check(fan: Fan, degree_map: Optional[DegreeMap] = None, cone: Optional[int] = None) -> bool:
    """Σ_{τ ≤ σ} (-1)^c h*(⟨τ⟩)(1-t)^c = t^dim σ h*(⟨σ⟩; 1/t) with c = dim σ - dim τ."""
    sigma = _single_cone(fan, cone)
    table = ehrhart_table(fan, degree_map)
    top = fan.cones[sigma].dim
    lhs = InvariantPolynomial.zero(T)
    for tau in fan.faces[sigma]:
        c = top - fan.cones[tau].dim
        lhs = lhs + table.hstar(tau) * t_poly(1, -1) ** c * (-1) ** c
    return lhs == table.hstar(sigma).reciprocal(top)
