"""
Cone Geometry
=============
Exact geometry of rational polyhedral cones given by generators:
linear spans, facet normals, faces, pointedness, membership,
lattice points of fundamental parallelepipeds and quotient projections.

All computations happen in span coordinates so that cones of any
dimension inside R^d are handled uniformly.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Dict, FrozenSet, List, Optional, Sequence, Tuple

from .linalg import (
    QMatrix,
    Vector,
    dot,
    left_inverse,
    smith_normal_form,
    to_vector,
)


# =============================================================================
# LINEAR SPANS
# =============================================================================

def independent_indices(vectors: Sequence[Sequence], ambient: int) -> List[int]:
    """Indices of a lowest-index maximal independent subset."""
    if not vectors:
        return []
    matrix = QMatrix.from_columns([to_vector(v) for v in vectors], ambient)
    _, pivots = matrix.rref()
    return list(pivots)


def span_rank(vectors: Sequence[Sequence], ambient: int) -> int:
    return len(independent_indices(vectors, ambient))


def span_matrix(vectors: Sequence[Sequence], ambient: int) -> QMatrix:
    """d x k matrix whose columns are the lowest-index independent vectors."""
    idx = independent_indices(vectors, ambient)
    return QMatrix.from_columns([to_vector(vectors[i]) for i in idx], ambient)


# =============================================================================
# CONE GEOMETRY
# =============================================================================

@dataclass
class ConeGeometry:
    """Facets and faces of the cone generated by `generators` (rows in Q^d)."""
    generators: Tuple[Vector, ...]
    ambient: int
    basis: QMatrix = field(init=False)           # d x k span basis
    coordinates: QMatrix = field(init=False)     # k x d left inverse
    local: Tuple[Vector, ...] = field(init=False)
    facets: List[Tuple[Vector, FrozenSet[int]]] = field(init=False)

    def __post_init__(self):
        self.generators = tuple(to_vector(g) for g in self.generators)
        self.basis = span_matrix(self.generators, self.ambient)
        self.coordinates = left_inverse(self.basis)
        self.local = tuple(self.coordinates.apply(g) for g in self.generators)
        self.facets = self._facets()

    @property
    def dim(self) -> int:
        return self.basis.ncols

    def _facets(self) -> List[Tuple[Vector, FrozenSet[int]]]:
        k = self.dim
        n = len(self.local)
        if k == 0:
            return []
        found: Dict[FrozenSet[int], Vector] = {}
        for subset in combinations(range(n), k - 1):
            rows = [self.local[i] for i in subset]
            matrix = QMatrix(rows, k)
            if matrix.rank() != k - 1:
                continue
            normal = matrix.kernel()[0]
            values = [dot(normal, g) for g in self.local]
            if any(v > 0 for v in values) and any(v < 0 for v in values):
                continue
            if any(v < 0 for v in values):
                normal = tuple(-x for x in normal)
                values = [-v for v in values]
            zero = frozenset(i for i, v in enumerate(values) if v == 0)
            if zero in found:
                continue
            if span_rank([self.local[i] for i in zero], k) != k - 1:
                continue
            found[zero] = normal
        return [(normal, zero) for zero, normal in sorted(found.items(), key=lambda kv: sorted(kv[0]))]

    def is_pointed(self) -> bool:
        """Sum of inner facet normals is positive on every generator."""
        if self.dim == 0:
            return True
        if not self.facets:
            return False
        total = [Fraction(0)] * self.dim
        for normal, _ in self.facets:
            total = [a + b for a, b in zip(total, normal)]
        return all(dot(total, g) > 0 for g in self.local)

    def faces(self) -> List[FrozenSet[int]]:
        """Every face as a set of generator indices, the cone itself included."""
        everything = frozenset(range(len(self.local)))
        found = {everything}
        frontier = [zero for _, zero in self.facets]
        while frontier:
            face = frontier.pop()
            if face in found:
                continue
            found.add(face)
            for _, zero in self.facets:
                meet = face & zero
                if meet not in found:
                    frontier.append(meet)
        return sorted(found, key=lambda f: (len(f), sorted(f)))

    def in_span(self, point: Sequence) -> bool:
        p = to_vector(point)
        return self.basis.apply(self.coordinates.apply(p)) == p

    def contains(self, point: Sequence) -> bool:
        if not self.in_span(point):
            return False
        local = self.coordinates.apply(to_vector(point))
        return all(dot(normal, local) >= 0 for normal, _ in self.facets)

    def in_relative_interior(self, point: Sequence) -> bool:
        if not self.in_span(point):
            return False
        local = self.coordinates.apply(to_vector(point))
        return all(dot(normal, local) > 0 for normal, _ in self.facets)

    def inner_normal_sum(self) -> Vector:
        """Sum of inner facet normals pulled back to R^d (zero on the orthogonal complement of the span)."""
        total = [Fraction(0)] * self.dim
        for normal, _ in self.facets:
            total = [a + b for a, b in zip(total, normal)]
        return tuple(dot(total, col) for col in self.coordinates.columns())


# =============================================================================
# LATTICE POINTS
# =============================================================================

def box_points(rays: Sequence[Sequence[int]]) -> List[Tuple[int, ...]]:
    """Lattice points of the half-open parallelepiped of linearly independent rays.

    With U·V·W = D the Smith form of the d x k ray matrix V, the
    coset representatives y (0 <= y_i < d_i) give coefficients c = W·D^-1·y;
    the Box point is V·frac(c). Sorted by (sum |b_i|, b).
    """
    rays = [tuple(int(x) for x in r) for r in rays]
    if not rays:
        return []
    d = len(rays[0])
    k = len(rays)
    matrix = [[rays[j][i] for j in range(k)] for i in range(d)]
    snf = smith_normal_form(matrix, k)
    diag = [snf.diagonal[i][i] for i in range(k)]
    if any(x == 0 for x in diag):
        raise ValueError("Rays are not linearly independent")
    points = set()

    def representatives(i):
        if i == k:
            yield ()
            return
        for value in range(diag[i]):
            for rest in representatives(i + 1):
                yield (value,) + rest

    for y in representatives(0):
        scaled = [Fraction(y[i], diag[i]) for i in range(k)]
        coeffs = [sum((snf.right[j][i] * scaled[i] for i in range(k)), Fraction(0)) for j in range(k)]
        frac = [c - (c.numerator // c.denominator) for c in coeffs]
        point = tuple(sum((rays[j][i] * frac[j] for j in range(k)), Fraction(0)) for i in range(d))
        points.add(tuple(int(x) for x in point))
    return sorted(points, key=lambda b: (sum(abs(x) for x in b), b))


def box_coefficients(rays: Sequence[Sequence[int]], point: Sequence[int]) -> Vector:
    """Coefficients of `point` in the ray basis of a simplicial cone."""
    d = len(point)
    matrix = QMatrix.from_columns([to_vector(r) for r in rays], d)
    return left_inverse(matrix).apply(to_vector(point))


def quotient_projection(rays: Sequence[Sequence[int]], ambient: int) -> QMatrix:
    """Integral surjection Z^d -> Z^(d-k) whose kernel is the saturated lattice of the span of `rays`."""
    if not rays:
        return QMatrix.identity(ambient)
    matrix = [[int(r[i]) for r in rays] for i in range(ambient)]
    snf = smith_normal_form(matrix, len(rays))
    k = len(snf.invariant_factors)
    return QMatrix([snf.left[i] for i in range(k, ambient)], ambient)


def determinant(rows: Sequence[Sequence]) -> Fraction:
    """Exact determinant by elimination."""
    a = [list(to_vector(r)) for r in rows]
    n = len(a)
    det = Fraction(1)
    for col in range(n):
        pivot = next((r for r in range(col, n) if a[r][col] != 0), None)
        if pivot is None:
            return Fraction(0)
        if pivot != col:
            a[col], a[pivot] = a[pivot], a[col]
            det = -det
        det *= a[col][col]
        for r in range(col + 1, n):
            if a[r][col]:
                factor = a[r][col] / a[col][col]
                a[r] = [x - factor * y for x, y in zip(a[r], a[col])]
    return det


# =============================================================================
# TRIANGULATIONS AND VOLUMES
# =============================================================================

def pulling_triangulation(indices: Sequence[int], vectors: Sequence[Sequence], ambient: int) -> List[Tuple[int, ...]]:
    """Simplicial cones covering cone(vectors[i] for i in indices), pulling the lowest index first.

    Using the same global order on every cone keeps the triangulations of
    shared faces compatible.
    """
    gens = sorted(indices)
    if not gens:
        return [()]
    geo = ConeGeometry([vectors[i] for i in gens], ambient)
    if len(gens) == geo.dim:
        return [tuple(gens)]
    apex = gens[0]
    simplices = []
    for _, zero in geo.facets:
        if 0 in zero:
            continue
        facet = [gens[i] for i in sorted(zero)]
        for simplex in pulling_triangulation(facet, vectors, ambient):
            simplices.append(tuple(sorted((apex,) + simplex)))
    return sorted(set(simplices))


def normalized_volume(simplices: Sequence[Sequence[int]], vectors: Sequence[Sequence], frame: ConeGeometry) -> Fraction:
    """Sum of |det| of simplex generators scaled onto the slice {s = 1} of `frame`.

    s is the sum of the inner facet normals of `frame`; simplices of lower
    dimension than the frame contribute nothing.
    """
    if frame.dim == 0:
        return Fraction(0)
    s = frame.inner_normal_sum()
    total = Fraction(0)
    for simplex in simplices:
        if len(simplex) != frame.dim:
            continue
        rows = []
        for i in simplex:
            v = to_vector(vectors[i])
            height = dot(s, v)
            rows.append([x / height for x in frame.coordinates.apply(v)])
        total += abs(determinant(rows))
    return total
