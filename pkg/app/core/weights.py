"""
Weight Sheaves
==============
The decreasing family of subsheaves W^r F, evaluated cone by cone:

- r <= 0: the whole stalk
- 0 < r <= dim σ: the preimage under F(σ) -> F(∂σ) of the weight-r sections
- r > dim σ: Σ_i x_i · W^(r - 2 deg x_i) F(σ)

For the C-structure dim σ is replaced by tdim σ = 2^dim σ - 1 and x_i has
t-degree 2^(i-1).
"""

from typing import Dict, Iterable, Optional, Tuple

from .graded import Degree, GradedSubspaceChain, tdim
from .linalg import Subspace, preimage
from .logging_utils import get_logger
from .sheaf import PureSheafData, Sections, boundary_restriction, boundary_sections, sections_over

logger = get_logger('weights')


class WeightSheaf:
    """Memoized W^r F(σ) for one sheaf."""

    def __init__(self, sheaf: PureSheafData):
        self.sheaf = sheaf
        self._stalks: Dict[Tuple[int, int], Dict[Degree, Subspace]] = {}

    @property
    def multigraded(self) -> bool:
        return self.sheaf.structure == 'C'

    def weight_range(self) -> Tuple[int, int]:
        d = self.sheaf.fan.ambient_dim
        if self.multigraded:
            return 0, 2 * tdim(d) + 1
        return 0, 2 * d + 1

    def threshold(self, cone: int) -> int:
        dim = self.sheaf.fan.cones[cone].dim
        return tdim(dim) if self.multigraded else dim

    def step(self, i: int) -> int:
        """2 · (t-)degree of x_(i+1)."""
        return 2 * 2 ** i if self.multigraded else 2

    def clamp(self, r: int) -> int:
        lo, hi = self.weight_range()
        return max(lo, min(r, hi))

    def stalk(self, cone: int, r: int) -> Dict[Degree, Subspace]:
        r = self.clamp(r)
        key = (cone, r)
        if key in self._stalks:
            return self._stalks[key]
        sheaf, g = self.sheaf, self.sheaf.grading
        result: Dict[Degree, Subspace] = {}
        if r <= 0:
            for deg in g.degrees():
                result[deg] = Subspace.full(sheaf.stalk_dim(cone, deg))
        elif r <= self.threshold(cone):
            boundary = boundary_sections(sheaf, cone)
            for deg in g.degrees():
                target = self.sections_in(boundary, r, deg)
                result[deg] = preimage(boundary_restriction(sheaf, cone, deg), target)
        else:
            stalk = sheaf.stalks[cone]
            for deg in g.degrees():
                n = stalk.dim(deg)
                vectors = []
                for i in range(g.nvars):
                    source = g.shift_down(deg, i)
                    if source is None or g.shift_up(source, i) != deg:
                        continue
                    lower = self.stalk(cone, r - self.step(i))[source]
                    vectors.extend(lower.image(stalk.multiplication(i, source)).basis)
                result[deg] = Subspace(n, vectors)
        self._stalks[key] = result
        return result

    def sections_in(self, sections: Sections, r: int, deg: Degree) -> Subspace:
        """Sections whose component at every maximal cone lies in W^r."""
        total = sum(self.sheaf.stalk_dim(a, deg) for a in sections.maximal)
        vectors = []
        start = 0
        for a in sections.maximal:
            size = self.sheaf.stalk_dim(a, deg)
            for v in self.stalk(a, r)[deg].basis:
                vectors.append(tuple([0] * start) + tuple(v) + tuple([0] * (total - start - size)))
            start += size
        direct_sum = Subspace(total, vectors)
        return preimage(sections.basis[deg], direct_sum)

    def filtration(self, cones: Optional[Iterable[int]] = None) -> GradedSubspaceChain:
        """W^• on F(U) over the whole effective range."""
        sections = sections_over(self.sheaf, range(len(self.sheaf.fan.cones)) if cones is None else cones)
        degrees = self.sheaf.grading.degrees()
        lo, hi = self.weight_range()
        steps = {r: {deg: self.sections_in(sections, r, deg) for deg in degrees} for r in range(lo, hi + 1)}
        return GradedSubspaceChain(reference={deg: sections.presentation.dim(deg) for deg in degrees},
                                   steps=steps, decreasing=True)


def weight_sheaf(sheaf: PureSheafData) -> WeightSheaf:
    if sheaf._weights is None:
        sheaf._weights = WeightSheaf(sheaf)
    return sheaf._weights


def weight_sheaf_sections(sheaf: PureSheafData, r: int, cones: Optional[Iterable[int]] = None) -> Dict[Degree, Subspace]:
    """W^r F(U) per degree, as subspaces of the section coordinates of F(U)."""
    weights = weight_sheaf(sheaf)
    sections = sections_over(sheaf, range(len(sheaf.fan.cones)) if cones is None else cones)
    return {deg: weights.sections_in(sections, r, deg) for deg in sheaf.grading.degrees()}


def closed_form_slice(sheaf: PureSheafData, cone: int, shift: Degree, r: int,
                      cones: Optional[Iterable[int]] = None) -> Dict[Degree, Subspace]:
    """The slice of F(U) in (t-)degrees >= T(j) + (r - dim σ)/2 predicted for L_σ[-j]."""
    g = sheaf.grading
    multigraded = sheaf.structure == 'C'
    dim = sheaf.fan.cones[cone].dim
    floor = 2 * g.tdeg(shift) + r - (tdim(dim) if multigraded else dim)
    sections = sections_over(sheaf, range(len(sheaf.fan.cones)) if cones is None else cones)
    out = {}
    for deg in g.degrees():
        n = sections.presentation.dim(deg)
        out[deg] = Subspace.full(n) if 2 * g.tdeg(deg) >= floor else Subspace.zero(n)
    return out
