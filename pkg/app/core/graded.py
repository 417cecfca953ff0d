"""
Graded Modules
==============
Truncated graded module presentations over the global polynomial ring
Q[x_1..x_d], free modules over cone rings, reduction modulo the maximal
ideal and filtrations by graded subspaces.

Two gradings are supported:
- SingleGrading: Z>=0 degrees 0..K, every x_i has degree 1 (A-structure).
- MultiGrading: (Z>=0)^d degrees with coordinates in {0,1,2} and at most one
  coordinate equal to 2; x_i has degree e_i (C-structure).
The top layer of either grading is a sentinel: a generator living there
means the truncation was too small.
"""

from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import product
from typing import Dict, List, Optional, Sequence, Tuple, Union

from .errors import CapTooSmall
from .linalg import QMatrix, QuotientMap, Subspace, left_inverse, quotient_map
from .polynomials import T, InvariantPolynomial

Degree = Union[int, Tuple[int, ...]]


# =============================================================================
# GRADINGS
# =============================================================================

class Grading(ABC):
    """Finite, downward-closed set of degrees with addition of variable degrees."""

    nvars: int

    @abstractmethod
    def degrees(self) -> List[Degree]:
        """All tracked degrees, lowest first."""

    @abstractmethod
    def variable_degree(self, i: int) -> Degree:
        """Degree of the global variable x_(i+1)."""

    @abstractmethod
    def add(self, a: Degree, b: Degree) -> Optional[Degree]:
        """a + b, or None if the sum leaves the tracked range."""

    @abstractmethod
    def sub(self, a: Degree, b: Degree) -> Optional[Degree]:
        """a - b, or None if negative."""

    @abstractmethod
    def is_sentinel(self, deg: Degree) -> bool:
        """True on the layer reserved for the cap assertion."""

    @abstractmethod
    def tdeg(self, deg: Degree) -> int:
        """Integer degree used by Poincare polynomials (identity or 2-adic weight)."""

    @abstractmethod
    def zero(self) -> Degree:
        pass

    def shift_up(self, deg: Degree, i: int) -> Optional[Degree]:
        return self.add(deg, self.variable_degree(i))

    def shift_down(self, deg: Degree, i: int) -> Optional[Degree]:
        return self.sub(deg, self.variable_degree(i))

    def to_json(self, deg: Degree):
        return list(deg) if isinstance(deg, tuple) else deg


@dataclass(frozen=True)
class SingleGrading(Grading):
    """Degrees 0..cap; the cap itself is the sentinel."""
    nvars: int
    cap: int

    def degrees(self) -> List[int]:
        return list(range(self.cap + 1))

    def variable_degree(self, i: int) -> int:
        return 1

    def add(self, a: int, b: int) -> Optional[int]:
        s = a + b
        return s if 0 <= s <= self.cap else None

    def sub(self, a: int, b: int) -> Optional[int]:
        s = a - b
        return s if s >= 0 else None

    def is_sentinel(self, deg: int) -> bool:
        return deg >= self.cap

    def tdeg(self, deg: int) -> int:
        return deg

    def zero(self) -> int:
        return 0


@dataclass(frozen=True)
class MultiGrading(Grading):
    """Squarefree multidegrees plus one sentinel layer with a single 2."""
    nvars: int

    def degrees(self) -> List[Tuple[int, ...]]:
        return _multi_degrees(self.nvars)

    def variable_degree(self, i: int) -> Tuple[int, ...]:
        return tuple(1 if j == i else 0 for j in range(self.nvars))

    def _valid(self, deg: Tuple[int, ...]) -> bool:
        return all(0 <= x <= 2 for x in deg) and sum(1 for x in deg if x == 2) <= 1

    def add(self, a, b) -> Optional[Tuple[int, ...]]:
        s = tuple(x + y for x, y in zip(a, b))
        return s if self._valid(s) else None

    def sub(self, a, b) -> Optional[Tuple[int, ...]]:
        s = tuple(x - y for x, y in zip(a, b))
        return s if all(x >= 0 for x in s) else None

    def is_sentinel(self, deg) -> bool:
        return any(x >= 2 for x in deg)

    def tdeg(self, deg) -> int:
        return sum(x * 2 ** j for j, x in enumerate(deg))

    def zero(self) -> Tuple[int, ...]:
        return (0,) * self.nvars


@lru_cache(maxsize=None)
def _multi_degrees(d: int) -> List[Tuple[int, ...]]:
    out = [deg for deg in product(range(3), repeat=d) if sum(1 for x in deg if x == 2) <= 1]
    return sorted(out, key=lambda deg: (sum(deg), sum(x * 2 ** j for j, x in enumerate(deg)), deg))


def single_grading(ambient_dim: int, cap_margin: int = 1) -> SingleGrading:
    return SingleGrading(nvars=ambient_dim, cap=ambient_dim + cap_margin)


def multi_grading(ambient_dim: int) -> MultiGrading:
    return MultiGrading(nvars=ambient_dim)


def tdim(dim: int) -> int:
    """t-dimension of a cone of dimension dim."""
    return 2 ** dim - 1


# =============================================================================
# MODULE PRESENTATIONS
# =============================================================================

@dataclass
class GradedModulePresentation:
    """Finite-dimensional pieces per degree plus multiplication by each global variable."""
    grading: Grading
    dims: Dict[Degree, int]
    mul: Dict[Tuple[int, Degree], QMatrix] = field(default_factory=dict)

    def dim(self, deg: Degree) -> int:
        return self.dims.get(deg, 0)

    def multiplication(self, i: int, deg: Degree) -> Optional[QMatrix]:
        """x_(i+1): piece(deg) -> piece(deg + e_i); None when the target is not tracked."""
        if self.grading.shift_up(deg, i) is None:
            return None
        matrix = self.mul.get((i, deg))
        if matrix is None:
            target = self.grading.shift_up(deg, i)
            matrix = QMatrix.zeros(self.dim(target), self.dim(deg))
        return matrix

    def is_zero(self) -> bool:
        return all(v == 0 for v in self.dims.values())

    def total_dim(self) -> int:
        return sum(self.dims.values())

    def commutes(self) -> bool:
        """mul_i mul_j == mul_j mul_i wherever both composites stay tracked."""
        g = self.grading
        for deg in g.degrees():
            for i in range(g.nvars):
                for j in range(i + 1, g.nvars):
                    di, dj = g.shift_up(deg, i), g.shift_up(deg, j)
                    if di is None or dj is None:
                        continue
                    top = g.shift_up(di, j)
                    if top is None:
                        continue
                    a = self.multiplication(j, di) @ self.multiplication(i, deg)
                    b = self.multiplication(i, dj) @ self.multiplication(j, deg)
                    if a != b:
                        return False
        return True


def zero_module(grading: Grading) -> GradedModulePresentation:
    return GradedModulePresentation(grading=grading, dims={deg: 0 for deg in grading.degrees()})


def direct_sum(first: GradedModulePresentation, second: GradedModulePresentation) -> GradedModulePresentation:
    g = first.grading
    dims = {deg: first.dim(deg) + second.dim(deg) for deg in g.degrees()}
    mul = {}
    for deg in g.degrees():
        for i in range(g.nvars):
            a, b = first.multiplication(i, deg), second.multiplication(i, deg)
            if a is not None:
                mul[(i, deg)] = QMatrix.block_diagonal([a, b])
    return GradedModulePresentation(grading=g, dims=dims, mul=mul)


def shift_module(module: GradedModulePresentation, j: int) -> GradedModulePresentation:
    """M[-j] for a single grading: piece k of the result is piece k - j of M."""
    g = module.grading
    if not isinstance(g, SingleGrading):
        raise ValueError("shift_module expects a single grading")
    dims = {deg: (module.dim(deg - j) if deg - j >= 0 else 0) for deg in g.degrees()}
    mul = {}
    for deg in g.degrees():
        if deg - j < 0 or g.shift_up(deg, 0) is None:
            continue
        for i in range(g.nvars):
            mul[(i, deg)] = module.multiplication(i, deg - j)
    return GradedModulePresentation(grading=g, dims=dims, mul=mul)


def submodule(module: GradedModulePresentation, pieces: Dict[Degree, Subspace]) -> Tuple[GradedModulePresentation, Dict[Degree, QMatrix]]:
    """Presentation of a graded submodule given per-degree subspaces.

    Returns the presentation and, per degree, the inclusion matrix (columns
    are the subspace basis in the ambient coordinates).
    """
    g = module.grading
    inclusions = {deg: pieces[deg].as_columns() for deg in g.degrees()}
    inverses = {deg: left_inverse(inclusions[deg]) for deg in g.degrees()}
    mul = {}
    for deg in g.degrees():
        for i in range(g.nvars):
            target = g.shift_up(deg, i)
            if target is None:
                continue
            image = module.multiplication(i, deg) @ inclusions[deg]
            mul[(i, deg)] = inverses[target] @ image
    dims = {deg: pieces[deg].dim for deg in g.degrees()}
    return GradedModulePresentation(grading=g, dims=dims, mul=mul), inclusions


# =============================================================================
# CONE RINGS AND FREE MODULES
# =============================================================================

@dataclass(frozen=True)
class CellRing:
    """Polynomial ring of a cone in local variables y_1..y_k.

    `action` is the d x k matrix expressing each global variable:
    x_i = sum_j action[i][j] y_j. `structure` decides the local degrees:
    'A' gives every y_j degree 1, 'C' gives y_j degree e_j.
    """
    grading: Grading
    action: QMatrix
    structure: str = 'A'

    @property
    def nlocal(self) -> int:
        return self.action.ncols

    def local_degree(self, j: int) -> Degree:
        if self.structure == 'C':
            return self.grading.variable_degree(j)
        return 1

    def monomials(self, deg: Degree) -> List[Tuple[int, ...]]:
        """Exponent vectors of local monomials of the given degree, sorted."""
        k = self.nlocal
        if self.structure == 'C':
            if any(deg[j] for j in range(k, len(deg))):
                return []
            return [tuple(deg[:k])]
        return _compositions(deg, k)

    def piece_dim(self, deg: Optional[Degree]) -> int:
        if deg is None:
            return 0
        return len(self.monomials(deg))


@lru_cache(maxsize=None)
def _compositions(total: int, parts: int) -> List[Tuple[int, ...]]:
    if parts == 0:
        return [()] if total == 0 else []
    out = []
    for first in range(total, -1, -1):
        for rest in _compositions(total - first, parts - 1):
            out.append((first,) + rest)
    return out


def a_ring(grading: Grading, span_basis: QMatrix) -> CellRing:
    return CellRing(grading=grading, action=span_basis, structure='A')


def c_ring(grading: Grading, dim: int) -> CellRing:
    d = grading.nvars
    action = QMatrix([[1 if i == j else 0 for j in range(dim)] for i in range(d)], dim)
    return CellRing(grading=grading, action=action, structure='C')


@dataclass
class FreeModule:
    """Free module over a cone ring with a monomial basis (generator, exponent)."""
    ring: CellRing
    generator_degrees: List[Degree]
    presentation: GradedModulePresentation
    labels: Dict[Degree, List[Tuple[int, Tuple[int, ...]]]]
    index: Dict[Degree, Dict[Tuple[int, Tuple[int, ...]], int]]


def free_module(ring: CellRing, generator_degrees: Sequence[Degree]) -> FreeModule:
    g = ring.grading
    labels: Dict[Degree, List[Tuple[int, Tuple[int, ...]]]] = {}
    index: Dict[Degree, Dict[Tuple[int, Tuple[int, ...]], int]] = {}
    for deg in g.degrees():
        entries = []
        for b, gen_deg in enumerate(generator_degrees):
            rest = g.sub(deg, gen_deg)
            if rest is None:
                continue
            entries.extend((b, alpha) for alpha in ring.monomials(rest))
        labels[deg] = entries
        index[deg] = {label: n for n, label in enumerate(entries)}

    mul: Dict[Tuple[int, Degree], QMatrix] = {}
    for deg in g.degrees():
        for i in range(g.nvars):
            target = g.shift_up(deg, i)
            if target is None:
                continue
            rows = [[Fraction(0)] * len(labels[deg]) for _ in labels[target]]
            for col, (b, alpha) in enumerate(labels[deg]):
                for j in range(ring.nlocal):
                    coeff = ring.action.rows[i][j]
                    if not coeff:
                        continue
                    bumped = tuple(a + (1 if jj == j else 0) for jj, a in enumerate(alpha))
                    row = index[target].get((b, bumped))
                    if row is not None:
                        rows[row][col] += coeff
            mul[(i, deg)] = QMatrix(rows, len(labels[deg]))

    presentation = GradedModulePresentation(
        grading=g, dims={deg: len(labels[deg]) for deg in g.degrees()}, mul=mul)
    return FreeModule(ring=ring, generator_degrees=list(generator_degrees),
                      presentation=presentation, labels=labels, index=index)


def free_rank_count(ring: CellRing, generator_degrees: Sequence[Degree], deg: Degree) -> int:
    """Dimension of piece `deg` of the free module with these generators."""
    g = ring.grading
    return sum(ring.piece_dim(g.sub(deg, gd)) for gd in generator_degrees)


# =============================================================================
# REDUCTION MODULO THE MAXIMAL IDEAL
# =============================================================================

@dataclass
class ReducedModule:
    """M / mM degree by degree with projections and complement lifts."""
    module: GradedModulePresentation
    maps: Dict[Degree, QuotientMap]
    ideal_parts: Dict[Degree, Subspace]

    @property
    def grading(self) -> Grading:
        return self.module.grading

    def dim(self, deg: Degree) -> int:
        return self.maps[deg].dim

    def dims(self) -> Dict[Degree, int]:
        return {deg: self.dim(deg) for deg in self.grading.degrees()}

    def projection(self, deg: Degree) -> QMatrix:
        return self.maps[deg].projection

    def lift(self, deg: Degree) -> QMatrix:
        return self.maps[deg].lift

    def generator_degrees(self) -> List[Degree]:
        out = []
        for deg in self.grading.degrees():
            out.extend([deg] * self.dim(deg))
        return out

    def poincare(self) -> InvariantPolynomial:
        """Poincare polynomial in t, using tdeg for multigraded modules."""
        terms: Dict[Tuple[int], int] = {}
        for deg in self.grading.degrees():
            n = self.dim(deg)
            if n:
                key = (self.grading.tdeg(deg),)
                terms[key] = terms.get(key, 0) + n
        return InvariantPolynomial(T, terms)

    def reduce_subspace(self, deg: Degree, subspace: Subspace) -> Subspace:
        return subspace.image(self.projection(deg))


def ideal_part(module: GradedModulePresentation, deg: Degree) -> Subspace:
    """m·M in degree deg: the sum of the images of every x_i."""
    g = module.grading
    vectors = []
    for i in range(g.nvars):
        source = g.shift_down(deg, i)
        if source is None or g.shift_up(source, i) != deg:
            continue
        matrix = module.multiplication(i, source)
        vectors.extend(matrix.columns())
    return Subspace(module.dim(deg), vectors)


def reduce_mod_m(module: GradedModulePresentation, check_cap: bool = True, cone=None) -> ReducedModule:
    """Reduce a module modulo the maximal ideal; CapTooSmall if a generator sits on the sentinel layer."""
    g = module.grading
    maps: Dict[Degree, QuotientMap] = {}
    parts: Dict[Degree, Subspace] = {}
    for deg in g.degrees():
        parts[deg] = ideal_part(module, deg)
        maps[deg] = quotient_map(parts[deg])
        if check_cap and g.is_sentinel(deg) and maps[deg].dim:
            raise CapTooSmall(cone, g.to_json(deg))
    return ReducedModule(module=module, maps=maps, ideal_parts=parts)


# =============================================================================
# FILTRATIONS
# =============================================================================

@dataclass
class GradedSubspaceChain:
    """A filtration by graded subspaces of a reference module.

    Decreasing chains (weight, monodromy) return the full piece below the
    first stored index and the last stored value above the last one.
    Increasing chains (Hodge) do the opposite.
    """
    reference: Dict[Degree, int]
    steps: Dict[int, Dict[Degree, Subspace]]
    decreasing: bool = True

    def get(self, r: int, deg: Degree) -> Subspace:
        lo, hi = min(self.steps), max(self.steps)
        n = self.reference[deg]
        if self.decreasing:
            if r < lo:
                return Subspace.full(n)
            return self.steps[min(r, hi)][deg]
        if r > hi:
            return Subspace.full(n)
        if r < lo:
            return Subspace.zero(n)
        return self.steps[r][deg]

    def indices(self) -> List[int]:
        return sorted(self.steps)

    def is_monotone(self) -> bool:
        idx = self.indices()
        for a, b in zip(idx, idx[1:]):
            for deg in self.reference:
                smaller, larger = (self.steps[b][deg], self.steps[a][deg]) if self.decreasing \
                    else (self.steps[a][deg], self.steps[b][deg])
                if not smaller.issubset(larger):
                    return False
        return True

    def contained_in_reference(self) -> bool:
        return all(space.ambient == self.reference[deg]
                   for step in self.steps.values() for deg, space in step.items())
