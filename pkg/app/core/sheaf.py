"""
Pure Sheaves
============
Pure sheaves on fans stored as finite-dimensional presentations: a graded
stalk per cone plus restriction matrices to every facet, degree by degree.

Provides:
- simple sheaves L_σ for the A- and C-structures (minimal extension when σ = o)
- sections over subfans, relative sections and restrictions between them
- direct images along subdivisions with a freeness certificate
- decomposition into shifted simple sheaves and local Poincare polynomials
"""

import weakref
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Iterable, List, Optional, Tuple

from .config_manager import get_config
from .errors import (
    CapTooSmall,
    ConsistencyMismatch,
    DimensionLimitExceeded,
    FreenessCertificateFailed,
)
from .fan import Fan, boundary_cones
from .graded import (
    CellRing,
    Degree,
    FreeModule,
    GradedModulePresentation,
    Grading,
    ReducedModule,
    SingleGrading,
    a_ring,
    c_ring,
    free_module,
    free_rank_count,
    multi_grading,
    reduce_mod_m,
    shift_module,
    single_grading,
    submodule,
    tdim,
    zero_module,
)
from .linalg import QMatrix, Subspace, kernel_subspace, left_inverse
from .logging_utils import get_logger
from .polynomials import T, InvariantPolynomial
from .subdivision import FanSubdivision

logger = get_logger('sheaf')

STRUCTURES = ('A', 'C', 'Ehrhart')


# =============================================================================
# DATA
# =============================================================================

@dataclass
class FreeCover:
    """A free module mapping onto a target module degree by degree."""
    free: FreeModule
    images: Dict[Degree, QMatrix]

    def is_surjective(self, target: GradedModulePresentation) -> bool:
        return all(self.images[deg].rank() == target.dim(deg) for deg in target.grading.degrees())


@dataclass(eq=False)
class PureSheafData:
    """Stalks F(σ) and restriction matrices F(τ)_λ -> F(φ)_λ for every facet φ of τ."""
    fan: Fan
    structure: str
    grading: Grading
    stalks: Dict[int, GradedModulePresentation] = field(default_factory=dict)
    restrictions: Dict[Tuple[int, int], Dict[Degree, QMatrix]] = field(default_factory=dict)
    covers: Dict[int, FreeCover] = field(default_factory=dict)
    flabby: Dict[int, bool] = field(default_factory=dict)
    base: Optional[int] = None
    shift: int = 0
    label: str = ''
    metadata: Dict = field(default_factory=dict)
    subdivision: Optional[FanSubdivision] = None
    source: Optional['PureSheafData'] = None
    preimages: Dict[int, 'Sections'] = field(default_factory=dict, repr=False)
    _weights: Optional[object] = field(default=None, repr=False)
    _composite: Dict = field(default_factory=dict, repr=False)
    _sections: Dict = field(default_factory=dict, repr=False)

    def stalk_dim(self, cone: int, deg: Degree) -> int:
        return self.stalks[cone].dim(deg)

    def ring(self, cone: int) -> CellRing:
        return cone_ring(self.fan, cone, self.grading, self.structure)

    def restrict(self, tau: int, gamma: int, deg: Degree) -> QMatrix:
        """res(τ -> γ) in degree deg, composed along lowest-index facets."""
        if tau == gamma:
            return QMatrix.identity(self.stalk_dim(tau, deg))
        key = (tau, gamma, deg)
        if key in self._composite:
            return self._composite[key]
        rows, cols = self.stalk_dim(gamma, deg), self.stalk_dim(tau, deg)
        if rows == 0 or cols == 0:
            result = QMatrix.zeros(rows, cols)
        else:
            facet = next(f for f in self.fan.facets[tau] if gamma in self.fan.faces[f])
            step = self.restrictions.get((tau, facet), {}).get(deg)
            if step is None:
                step = QMatrix.zeros(self.stalk_dim(facet, deg), cols)
            result = self.restrict(facet, gamma, deg) @ step
        self._composite[key] = result
        return result

    def generator_degrees(self, cone: int) -> List[Degree]:
        return reduce_mod_m(self.stalks[cone], check_cap=False).generator_degrees()

    def is_flabby(self) -> bool:
        return all(self.flabby.values())

    def to_dict(self) -> dict:
        """Sheaf dump: generator degrees and piece dimensions per cone."""
        g = self.grading
        cones = []
        for cone in self.fan.cones:
            stalk = self.stalks[cone.index]
            cones.append({
                'cone': cone.index,
                'rays': list(cone.rays),
                'generator_degrees': [g.to_json(d) for d in self.generator_degrees(cone.index)],
                'dims': {str(g.to_json(d)): stalk.dim(d) for d in g.degrees() if stalk.dim(d)},
            })
        return {
            'structure': self.structure,
            'label': self.label,
            'base': self.base,
            'shift': self.shift,
            'flabby': self.is_flabby(),
            'cones': cones,
            'metadata': self.metadata,
        }


def cone_ring(fan: Fan, cone: int, grading: Grading, structure: str) -> CellRing:
    dim = fan.cones[cone].dim
    if structure == 'C':
        return c_ring(grading, dim)
    basis = QMatrix.from_columns(fan.cones[cone].span_basis, fan.ambient_dim)
    return a_ring(grading, basis)


def make_grading(fan: Fan, structure: str, cap_margin: Optional[int] = None) -> Grading:
    config = get_config()
    limit = config.dimension_limit('ehrhart' if structure == 'Ehrhart' else structure)
    if fan.ambient_dim > limit:
        raise DimensionLimitExceeded(fan.ambient_dim, limit, structure)
    if structure == 'C':
        return multi_grading(fan.ambient_dim)
    if cap_margin is None:
        cap_margin = int(config.get('sheaf', 'cap_margin', default=1))
    return single_grading(fan.ambient_dim, cap_margin)


# =============================================================================
# SECTIONS
# =============================================================================

@dataclass(eq=False)
class Sections:
    """F(U) as the equalizer inside ⊕_{maximal a ∈ U} F(a), degree by degree."""
    sheaf: PureSheafData
    cones: FrozenSet[int]
    maximal: Tuple[int, ...]
    basis: Dict[Degree, QMatrix]
    presentation: GradedModulePresentation
    _inverse: Dict[Degree, QMatrix] = field(default_factory=dict, repr=False)
    _reduced: Optional[ReducedModule] = field(default=None, repr=False)

    def offsets(self, deg: Degree) -> Dict[int, Tuple[int, int]]:
        out, start = {}, 0
        for a in self.maximal:
            size = self.sheaf.stalk_dim(a, deg)
            out[a] = (start, size)
            start += size
        return out

    def block(self, cone: int, deg: Degree) -> QMatrix:
        """Coordinates of sections -> component at a maximal cone."""
        start, size = self.offsets(deg)[cone]
        basis = self.basis[deg]
        return QMatrix([basis.rows[start + i] for i in range(size)], basis.ncols)

    def component(self, cone: int, deg: Degree) -> QMatrix:
        """Section coordinates -> F(cone) for any cone of U."""
        owner = next(a for a in self.maximal if cone in self.sheaf.fan.faces[a])
        return self.sheaf.restrict(owner, cone, deg) @ self.block(owner, deg)

    def coordinates(self, deg: Degree, stacked: QMatrix) -> QMatrix:
        """Express stacked component columns in the section basis."""
        if deg not in self._inverse:
            self._inverse[deg] = left_inverse(self.basis[deg])
        return self._inverse[deg] @ stacked

    def gather(self, deg: Degree, blocks: Dict[int, QMatrix], ncols: int) -> QMatrix:
        stacked = QMatrix.zeros(0, ncols)
        for a in self.maximal:
            stacked = stacked.vstack(blocks[a])
        return self.coordinates(deg, stacked)

    def restrict_to(self, other: 'Sections', deg: Degree) -> QMatrix:
        """F(U)_deg -> F(V)_deg for V ⊆ U."""
        ncols = self.presentation.dim(deg)
        blocks = {a: self.component(a, deg) for a in other.maximal}
        return other.gather(deg, blocks, ncols)

    def reduced(self) -> ReducedModule:
        if self._reduced is None:
            self._reduced = reduce_mod_m(self.presentation, check_cap=False)
        return self._reduced

    def poincare(self) -> InvariantPolynomial:
        return self.reduced().poincare()


def sections_over(sheaf: PureSheafData, cones: Iterable[int]) -> Sections:
    """Sections over the subfan generated by `cones`; the empty subfan gives the zero module."""
    closed = sheaf.fan.closure(cones)
    if closed in sheaf._sections:
        return sheaf._sections[closed]
    fan, g = sheaf.fan, sheaf.grading
    maximal = tuple(fan.maximal_in(closed))
    basis: Dict[Degree, QMatrix] = {}
    for deg in g.degrees():
        sizes = [sheaf.stalk_dim(a, deg) for a in maximal]
        starts = [sum(sizes[:i]) for i in range(len(sizes))]
        total = sum(sizes)
        rows = []
        for x in range(len(maximal)):
            for y in range(x + 1, len(maximal)):
                a, b = maximal[x], maximal[y]
                gamma = fan.meet(a, b)
                if gamma is None or sheaf.stalk_dim(gamma, deg) == 0:
                    continue
                ra, rb = sheaf.restrict(a, gamma, deg), sheaf.restrict(b, gamma, deg)
                for i in range(ra.nrows):
                    row = [0] * total
                    row[starts[x]:starts[x] + sizes[x]] = ra.rows[i]
                    row[starts[y]:starts[y] + sizes[y]] = [-c for c in rb.rows[i]]
                    rows.append(row)
        basis[deg] = QMatrix.from_columns(QMatrix(rows, total).kernel(), total)

    mul = {}
    for deg in g.degrees():
        for i in range(g.nvars):
            target = g.shift_up(deg, i)
            if target is None:
                continue
            blocks = QMatrix.block_diagonal([sheaf.stalks[a].multiplication(i, deg) for a in maximal])
            mul[(i, deg)] = left_inverse(basis[target]) @ blocks @ basis[deg]
    presentation = GradedModulePresentation(
        grading=g, dims={deg: basis[deg].ncols for deg in g.degrees()}, mul=mul)
    result = Sections(sheaf=sheaf, cones=closed, maximal=maximal, basis=basis, presentation=presentation)
    sheaf._sections[closed] = result
    return result


def global_sections(sheaf: PureSheafData) -> Sections:
    return sections_over(sheaf, range(len(sheaf.fan.cones)))


def boundary_sections(sheaf: PureSheafData, cone: int) -> Sections:
    """Sections over ∂σ, the proper faces of σ."""
    return sections_over(sheaf, [f for f in sheaf.fan.faces[cone] if f != cone])


def boundary_restriction(sheaf: PureSheafData, cone: int, deg: Degree) -> QMatrix:
    """F(σ)_deg -> F(∂σ)_deg."""
    target = boundary_sections(sheaf, cone)
    ncols = sheaf.stalk_dim(cone, deg)
    blocks = {a: sheaf.restrict(cone, a, deg) for a in target.maximal}
    return target.gather(deg, blocks, ncols)


def relative_sections(sheaf: PureSheafData) -> Tuple[GradedModulePresentation, Dict[Degree, QMatrix]]:
    """F(Δ, ∂Δ) = ker(F(Δ) -> F(∂Δ)) with its inclusion into F(Δ)."""
    whole = global_sections(sheaf)
    boundary = sections_over(sheaf, boundary_cones(sheaf.fan))
    pieces = {}
    for deg in sheaf.grading.degrees():
        if boundary.maximal:
            pieces[deg] = kernel_subspace(whole.restrict_to(boundary, deg))
        else:
            pieces[deg] = Subspace.full(whole.presentation.dim(deg))
    return submodule(whole.presentation, pieces)


# =============================================================================
# FREE COVERS
# =============================================================================

def _label_degree(ring: CellRing, gen_deg: Degree, alpha: Tuple[int, ...]) -> Degree:
    deg = gen_deg
    for j, a in enumerate(alpha):
        for _ in range(a):
            deg = ring.grading.add(deg, ring.local_degree(j))
    return deg


def free_cover(ring: CellRing, target: GradedModulePresentation, reduced: ReducedModule) -> FreeCover:
    """Free module on lifts of a basis of target/m·target, mapped onto target."""
    g = ring.grading
    gens: List[Tuple[Degree, tuple]] = []
    for deg in g.degrees():
        for col in reduced.lift(deg).columns():
            gens.append((deg, col))
    free = free_module(ring, [d for d, _ in gens])

    if ring.structure == 'A':
        local_rows = left_inverse(ring.action).rows
    else:
        local_rows = None
    images: Dict[Tuple[int, Tuple[int, ...]], tuple] = {}

    def act(j: int, deg: Degree, vector: tuple) -> tuple:
        """y_j · vector for vector in target_deg."""
        if local_rows is None:
            return target.multiplication(j, deg).apply(vector)
        result = None
        for i, coeff in enumerate(local_rows[j]):
            if not coeff:
                continue
            part = target.multiplication(i, deg).apply(vector)
            part = tuple(coeff * x for x in part)
            result = part if result is None else tuple(p + q for p, q in zip(result, part))
        if result is None:
            target_deg = g.add(deg, ring.local_degree(j))
            result = tuple(0 for _ in range(target.dim(target_deg)))
        return result

    def image(b: int, alpha: Tuple[int, ...]) -> tuple:
        key = (b, alpha)
        if key in images:
            return images[key]
        nonzero = [j for j, a in enumerate(alpha) if a]
        if not nonzero:
            value = gens[b][1]
        else:
            j = nonzero[0]
            prev = tuple(a - (1 if jj == j else 0) for jj, a in enumerate(alpha))
            value = act(j, _label_degree(ring, gens[b][0], prev), image(b, prev))
        images[key] = value
        return value

    matrices = {}
    for deg in g.degrees():
        cols = [image(b, alpha) for b, alpha in free.labels[deg]]
        matrices[deg] = QMatrix.from_columns(cols, target.dim(deg))
    return FreeCover(free=free, images=matrices)


# =============================================================================
# SIMPLE SHEAVES
# =============================================================================

def build_simple_sheaf(fan: Fan, base: int = 0, structure: str = 'A', cap_margin: Optional[int] = None,
                       label: Optional[str] = None) -> PureSheafData:
    """L_base: rank one at the base, zero off its star, minimal extension above it."""
    if structure not in ('A', 'C'):
        raise ValueError(f"simple sheaves use the A or C structure, not {structure!r}")
    grading = make_grading(fan, structure, cap_margin)
    sheaf = PureSheafData(fan=fan, structure=structure, grading=grading, base=base,
                          label=label or f"L[{base}]({fan.label or 'fan'}, {structure})")
    for cone in fan.cones:
        tau = cone.index
        ring = sheaf.ring(tau)
        if tau == base:
            free = free_module(ring, [grading.zero()])
            sheaf.stalks[tau] = free.presentation
            sheaf.covers[tau] = FreeCover(free=free, images={})
            sheaf.flabby[tau] = True
            continue
        if base not in fan.faces[tau]:
            sheaf.stalks[tau] = zero_module(grading)
            sheaf.flabby[tau] = True
            continue
        boundary = boundary_sections(sheaf, tau)
        reduced = reduce_mod_m(boundary.presentation, check_cap=True, cone=tau)
        cover = free_cover(ring, boundary.presentation, reduced)
        sheaf.stalks[tau] = cover.free.presentation
        sheaf.covers[tau] = cover
        sheaf.flabby[tau] = cover.is_surjective(boundary.presentation)
        for facet in fan.facets[tau]:
            sheaf.restrictions[(tau, facet)] = {
                deg: boundary.component(facet, deg) @ cover.images[deg] for deg in grading.degrees()
            }
    logger.debug(f"[Sheaf] built {sheaf.label}")
    return sheaf


def simple_sheaf(fan: Fan, base: int = 0, structure: str = 'A') -> PureSheafData:
    """Cached build_simple_sheaf with the configured cap."""
    cache = _SIMPLE_CACHE.setdefault(fan, {})
    key = (base, structure)
    if key not in cache:
        cache[key] = build_simple_sheaf(fan, base, structure)
    return cache[key]


_SIMPLE_CACHE: 'weakref.WeakKeyDictionary[Fan, Dict]' = weakref.WeakKeyDictionary()


def shift_sheaf(sheaf: PureSheafData, j: int) -> PureSheafData:
    """F[-j] for a single grading; CapTooSmall if a shifted generator reaches the cap."""
    g = sheaf.grading
    if not isinstance(g, SingleGrading):
        raise ValueError("shift_sheaf expects a single grading")
    shifted = PureSheafData(fan=sheaf.fan, structure=sheaf.structure, grading=g, base=sheaf.base,
                            shift=sheaf.shift + j, label=f"{sheaf.label}[-{j}]",
                            flabby=dict(sheaf.flabby), metadata=dict(sheaf.metadata))
    for cone, stalk in sheaf.stalks.items():
        for deg in reduce_mod_m(stalk, check_cap=False).generator_degrees():
            if g.is_sentinel(deg + j):
                raise CapTooSmall(cone, deg + j)
        shifted.stalks[cone] = shift_module(stalk, j)
    for key, per_degree in sheaf.restrictions.items():
        tau, facet = key
        moved = {}
        for deg in g.degrees():
            if deg - j >= 0:
                moved[deg] = per_degree[deg - j]
            else:
                moved[deg] = QMatrix.zeros(0, 0)
        shifted.restrictions[key] = moved
    return shifted


# =============================================================================
# DIRECT IMAGES
# =============================================================================

def pushforward(pi: FanSubdivision, sheaf: PureSheafData) -> PureSheafData:
    """π_*F: stalk at σ is F(π⁻¹⟨σ⟩), certified free over the ring of σ."""
    if sheaf.fan is not pi.fine:
        raise ValueError("sheaf does not live on the fine fan of this subdivision")
    coarse, g = pi.coarse, sheaf.grading
    pushed = PureSheafData(fan=coarse, structure=sheaf.structure, grading=g, base=sheaf.base,
                           shift=sheaf.shift, label=f"pi_*({sheaf.label})", metadata=dict(sheaf.metadata))
    preimages: Dict[int, Sections] = {}
    for cone in coarse.cones:
        preimages[cone.index] = sections_over(sheaf, pi.preimage(cone.index))
        pushed.stalks[cone.index] = preimages[cone.index].presentation
    for cone in coarse.cones:
        for facet in coarse.facets[cone.index]:
            pushed.restrictions[(cone.index, facet)] = {
                deg: preimages[cone.index].restrict_to(preimages[facet], deg) for deg in g.degrees()
            }
    for cone in coarse.cones:
        stalk = pushed.stalks[cone.index]
        ring = pushed.ring(cone.index)
        reduced = reduce_mod_m(stalk, check_cap=True, cone=cone.index)
        gens = reduced.generator_degrees()
        for deg in g.degrees():
            expected = free_rank_count(ring, gens, deg)
            if stalk.dim(deg) != expected:
                raise FreenessCertificateFailed(cone.index, g.to_json(deg), stalk.dim(deg), expected)
        cover = free_cover(ring, stalk, reduced)
        for deg in g.degrees():
            if cover.images[deg].rank() != stalk.dim(deg):
                raise FreenessCertificateFailed(cone.index, g.to_json(deg), cover.images[deg].rank(),
                                                stalk.dim(deg))
        pushed.covers[cone.index] = cover
        pushed.flabby[cone.index] = True
    for cone in coarse.cones:
        if cone.dim > 0:
            target = boundary_sections(pushed, cone.index)
            pushed.flabby[cone.index] = all(
                boundary_restriction(pushed, cone.index, deg).rank() == target.presentation.dim(deg)
                for deg in g.degrees())
    pushed.subdivision = pi
    pushed.preimages = preimages
    pushed.source = sheaf
    return pushed


def identification(pushed: PureSheafData, cones: Iterable[int], deg: Degree) -> Tuple[Sections, Sections, QMatrix]:
    """π_*F(U)_deg -> F(π⁻¹U)_deg; returns both section spaces and the matrix."""
    pi, source, preimages = pushed.subdivision, pushed.source, pushed.preimages
    coarse_sections = sections_over(pushed, cones)
    fine_cones = set()
    for c in coarse_sections.cones:
        fine_cones.update(pi.preimage(c))
    fine_sections = sections_over(source, fine_cones)
    ncols = coarse_sections.presentation.dim(deg)
    blocks = {}
    for rho in fine_sections.maximal:
        owner = next(a for a in coarse_sections.maximal if pi.pi[rho] in pi.coarse.faces[a])
        blocks[rho] = preimages[owner].component(rho, deg) @ coarse_sections.block(owner, deg)
    return coarse_sections, fine_sections, fine_sections.gather(deg, blocks, ncols)


# =============================================================================
# DECOMPOSITION
# =============================================================================

@dataclass
class Summand:
    cone: int
    shift: Degree
    multiplicity: int


@dataclass
class DecompositionData:
    """Multiplicities of shifted simple sheaves and the spaces K_σ they come from."""
    sheaf: PureSheafData
    summands: List[Summand]
    kernels: Dict[int, Dict[Degree, Subspace]]
    splittings: Dict[int, Dict[Degree, QMatrix]]
    local_poincare: Dict[int, InvariantPolynomial]

    def kernel_dims(self, cone: int) -> Dict[Degree, int]:
        return {deg: space.dim for deg, space in self.kernels[cone].items() if space.dim}

    def to_dict(self) -> dict:
        g = self.sheaf.grading
        return {
            'summands': [
                {'cone': s.cone, 'shift': g.to_json(s.shift), 'multiplicity': s.multiplicity}
                for s in self.summands
            ],
        }


def local_kernel(sheaf: PureSheafData, cone: int) -> Dict[Degree, Subspace]:
    """K_σ = ker(\\ov{F(σ)} -> \\ov{F(∂σ)}) per degree, inside the reduced stalk."""
    stalk = reduce_mod_m(sheaf.stalks[cone], check_cap=False)
    boundary = boundary_sections(sheaf, cone).reduced()
    out = {}
    for deg in sheaf.grading.degrees():
        n = stalk.dim(deg)
        if n == 0:
            out[deg] = Subspace.zero(0)
            continue
        if cone == sheaf.fan.zero:
            out[deg] = Subspace.full(n)
            continue
        matrix = boundary.projection(deg) @ boundary_restriction(sheaf, cone, deg) @ stalk.lift(deg)
        out[deg] = kernel_subspace(matrix)
    return out


def decompose(sheaf: PureSheafData, check: Optional[bool] = None) -> DecompositionData:
    """Multiplicities dim K_σ[λ] of L_σ[-λ], with the reduced-sections consistency check."""
    g = sheaf.grading
    summands, kernels, splittings, local = [], {}, {}, {}
    for cone in sheaf.fan.cones:
        kernel = local_kernel(sheaf, cone.index)
        kernels[cone.index] = kernel
        stalk = reduce_mod_m(sheaf.stalks[cone.index], check_cap=False)
        terms: Dict[Tuple[int], int] = {}
        splittings[cone.index] = {}
        for deg in g.degrees():
            k = kernel[deg].dim
            if not k:
                continue
            summands.append(Summand(cone=cone.index, shift=deg, multiplicity=k))
            splittings[cone.index][deg] = stalk.lift(deg) @ kernel[deg].as_columns()
            key = (g.tdeg(deg),)
            terms[key] = terms.get(key, 0) + k
        local[cone.index] = InvariantPolynomial(T, terms)
    data = DecompositionData(sheaf=sheaf, summands=summands, kernels=kernels,
                             splittings=splittings, local_poincare=local)

    if check is None:
        check = bool(get_config().get('sheaf', 'check_decomposition', default=True))
    if check:
        lhs = global_sections(sheaf).poincare()
        rhs = decomposition_poincare(data)
        if lhs != rhs:
            raise ConsistencyMismatch(str(lhs), str(rhs))
    return data


def decomposition_poincare(data: DecompositionData) -> InvariantPolynomial:
    """Σ_σ L(F, σ; t) P(\\ov{L_σ(Δ)}; t)."""
    structure = 'C' if data.sheaf.structure == 'C' else 'A'
    total = InvariantPolynomial.zero(T)
    for cone, poly in data.local_poincare.items():
        if not poly:
            continue
        simple = simple_sheaf(data.sheaf.fan, cone, structure)
        total = total + poly * global_sections(simple).poincare()
    return total


def braden_degree_bounds(sheaf: PureSheafData) -> bool:
    """Every stalk above the base is generated below (dim τ - dim σ)/2 (tdim for C)."""
    if sheaf.base is None:
        raise ValueError("degree bounds apply to simple sheaves")
    fan, g = sheaf.fan, sheaf.grading
    measure = tdim if sheaf.structure == 'C' else (lambda k: k)
    floor = measure(fan.cones[sheaf.base].dim)
    for tau in fan.star[sheaf.base]:
        if tau == sheaf.base:
            continue
        bound = measure(fan.cones[tau].dim) - floor
        for deg in sheaf.generator_degrees(tau):
            if 2 * (g.tdeg(deg) - sheaf.shift) >= bound:
                return False
    return True


def t_poincare(sheaf: PureSheafData, selector: str = 'sections') -> InvariantPolynomial:
    """P^t of the reduced global sections or of the reduced sections relative to ∂Δ."""
    if selector == 'sections':
        return global_sections(sheaf).poincare()
    if selector == 'relative':
        presentation, _ = relative_sections(sheaf)
        return reduce_mod_m(presentation, check_cap=False).poincare()
    raise ValueError(f"unknown selector {selector!r}; use 'sections' or 'relative'")
