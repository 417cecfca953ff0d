"""
Exact Linear Algebra
====================
Rational matrices, subspaces and integer normal forms.

Everything here works over Fraction; echelon forms always take the
lowest-index pivot so that kernels, complements and lifts are reproducible.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Iterable, List, Optional, Sequence, Tuple

Vector = Tuple[Fraction, ...]


def to_vector(values: Iterable) -> Vector:
    """Coerce ints, strings or Fractions into an exact vector."""
    return tuple(Fraction(v) for v in values)


def zero_vector(n: int) -> Vector:
    return (Fraction(0),) * n


def unit_vector(n: int, i: int) -> Vector:
    return tuple(Fraction(1) if j == i else Fraction(0) for j in range(n))


def dot(u: Sequence, v: Sequence) -> Fraction:
    return sum((Fraction(a) * b for a, b in zip(u, v) if a and b), Fraction(0))


def vec_add(u: Vector, v: Vector) -> Vector:
    return tuple(a + b for a, b in zip(u, v))


def vec_scale(c, v: Vector) -> Vector:
    return tuple(c * a for a in v)


def is_zero_vector(v: Sequence) -> bool:
    return all(x == 0 for x in v)


def _rref_rows(rows: Sequence[Sequence[Fraction]], ncols: int) -> Tuple[List[List[Fraction]], List[int]]:
    """Reduced row echelon form; returns the nonzero rows and their pivot columns."""
    m = [list(r) for r in rows]
    pivots: List[int] = []
    r = 0
    for c in range(ncols):
        if r >= len(m):
            break
        p = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        pivot_row = m[r]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b if b else a for a, b in zip(m[i], pivot_row)]
        pivots.append(c)
        r += 1
    return m[:r], pivots


# =============================================================================
# MATRICES
# =============================================================================

class QMatrix:
    """Immutable exact matrix acting on column vectors."""

    __slots__ = ('nrows', 'ncols', 'rows')

    def __init__(self, rows: Sequence[Sequence], ncols: Optional[int] = None):
        converted = tuple(tuple(Fraction(x) for x in row) for row in rows)
        if ncols is None:
            ncols = len(converted[0]) if converted else 0
        for row in converted:
            if len(row) != ncols:
                raise ValueError(f"Row of length {len(row)} in a matrix with {ncols} columns")
        self.nrows = len(converted)
        self.ncols = ncols
        self.rows = converted

    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> 'QMatrix':
        return cls([[0] * ncols for _ in range(nrows)], ncols)

    @classmethod
    def identity(cls, n: int) -> 'QMatrix':
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)], n)

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence], nrows: int) -> 'QMatrix':
        cols = [tuple(c) for c in columns]
        return cls([[col[i] for col in cols] for i in range(nrows)], len(cols))

    @classmethod
    def block_diagonal(cls, blocks: Sequence['QMatrix']) -> 'QMatrix':
        nrows = sum(b.nrows for b in blocks)
        ncols = sum(b.ncols for b in blocks)
        rows = []
        col_offset = 0
        for block in blocks:
            for row in block.rows:
                rows.append([0] * col_offset + list(row) + [0] * (ncols - col_offset - block.ncols))
            col_offset += block.ncols
        return cls(rows, ncols) if nrows else cls.zeros(0, ncols)

    @property
    def shape(self) -> Tuple[int, int]:
        return self.nrows, self.ncols

    def column(self, j: int) -> Vector:
        return tuple(row[j] for row in self.rows)

    def columns(self) -> List[Vector]:
        return [self.column(j) for j in range(self.ncols)]

    def transpose(self) -> 'QMatrix':
        return QMatrix(self.columns(), self.nrows)

    def apply(self, vector: Sequence) -> Vector:
        if len(vector) != self.ncols:
            raise ValueError(f"Vector of length {len(vector)} for a matrix with {self.ncols} columns")
        return tuple(dot(row, vector) for row in self.rows)

    def __matmul__(self, other: 'QMatrix') -> 'QMatrix':
        if self.ncols != other.nrows:
            raise ValueError(f"Cannot multiply {self.shape} by {other.shape}")
        other_cols = other.columns()
        return QMatrix([[dot(row, col) for col in other_cols] for row in self.rows], other.ncols)

    def __add__(self, other: 'QMatrix') -> 'QMatrix':
        if self.shape != other.shape:
            raise ValueError(f"Cannot add {self.shape} and {other.shape}")
        return QMatrix([[a + b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)], self.ncols)

    def __sub__(self, other: 'QMatrix') -> 'QMatrix':
        return self + other.scale(-1)

    def scale(self, c) -> 'QMatrix':
        c = Fraction(c)
        return QMatrix([[c * x for x in row] for row in self.rows], self.ncols)

    def __eq__(self, other) -> bool:
        return isinstance(other, QMatrix) and self.shape == other.shape and self.rows == other.rows

    def __hash__(self) -> int:
        return hash((self.nrows, self.ncols, self.rows))

    def __repr__(self) -> str:
        body = '; '.join(' '.join(str(x) for x in row) for row in self.rows)
        return f"QMatrix({self.nrows}x{self.ncols}: [{body}])"

    def hstack(self, other: 'QMatrix') -> 'QMatrix':
        if self.nrows != other.nrows:
            raise ValueError("hstack needs equal row counts")
        return QMatrix([list(a) + list(b) for a, b in zip(self.rows, other.rows)], self.ncols + other.ncols)

    def vstack(self, other: 'QMatrix') -> 'QMatrix':
        if self.ncols != other.ncols:
            raise ValueError("vstack needs equal column counts")
        return QMatrix(list(self.rows) + list(other.rows), self.ncols)

    def select_rows(self, indices: Sequence[int]) -> 'QMatrix':
        return QMatrix([self.rows[i] for i in indices], self.ncols)

    def select_columns(self, indices: Sequence[int]) -> 'QMatrix':
        return QMatrix([[row[j] for j in indices] for row in self.rows], len(indices))

    def is_zero(self) -> bool:
        return all(x == 0 for row in self.rows for x in row)

    def rref(self) -> Tuple['QMatrix', Tuple[int, ...]]:
        rows, pivots = _rref_rows(self.rows, self.ncols)
        return QMatrix(rows, self.ncols), tuple(pivots)

    def rank(self) -> int:
        return len(_rref_rows(self.rows, self.ncols)[1])

    def kernel(self) -> List[Vector]:
        """Kernel basis with one vector per free column, lowest free column first."""
        rows, pivots = _rref_rows(self.rows, self.ncols)
        pivot_set = set(pivots)
        basis = []
        for free in range(self.ncols):
            if free in pivot_set:
                continue
            x = [Fraction(0)] * self.ncols
            x[free] = Fraction(1)
            for row, p in zip(rows, pivots):
                x[p] = -row[free]
            basis.append(tuple(x))
        return basis

    def inverse(self) -> 'QMatrix':
        if self.nrows != self.ncols:
            raise ValueError("Only square matrices are invertible")
        n = self.nrows
        augmented = self.hstack(QMatrix.identity(n))
        rows, pivots = _rref_rows(augmented.rows, 2 * n)
        if list(pivots[:n]) != list(range(n)) or len(rows) < n:
            raise ZeroDivisionError("Matrix is singular")
        return QMatrix([row[n:] for row in rows], n)


# =============================================================================
# LINEAR SYSTEMS
# =============================================================================

@dataclass(frozen=True)
class LinearSolution:
    """Solution set of A x = b: a particular solution plus the kernel of A."""
    feasible: bool
    particular: Optional[Vector] = None
    kernel: Tuple[Vector, ...] = field(default_factory=tuple)

    @property
    def unique(self) -> bool:
        return self.feasible and not self.kernel


def solve_linear(matrix: QMatrix, rhs: Sequence) -> LinearSolution:
    """Solve matrix · x = rhs exactly; infeasibility is a result, not an error."""
    rhs = to_vector(rhs)
    if len(rhs) != matrix.nrows:
        raise ValueError("Right-hand side length does not match the row count")
    augmented = [list(row) + [b] for row, b in zip(matrix.rows, rhs)]
    rows, pivots = _rref_rows(augmented, matrix.ncols + 1)
    if pivots and pivots[-1] == matrix.ncols:
        return LinearSolution(feasible=False)
    x = [Fraction(0)] * matrix.ncols
    for row, p in zip(rows, pivots):
        x[p] = row[-1]
    return LinearSolution(feasible=True, particular=tuple(x), kernel=tuple(matrix.kernel()))


def left_inverse(basis: QMatrix) -> QMatrix:
    """Left inverse of a matrix with independent columns.

    Picks the lowest-index independent rows R, inverts the square block B_R
    and pads with zero columns, so the result L satisfies L·B = I.
    """
    n, k = basis.shape
    if k == 0:
        return QMatrix.zeros(0, n)
    _, row_pivots = basis.transpose().rref()
    if len(row_pivots) != k:
        raise ValueError("Columns are not linearly independent")
    block_inverse = basis.select_rows(row_pivots).inverse()
    rows = []
    for i in range(k):
        row = [Fraction(0)] * n
        for j, r in enumerate(row_pivots):
            row[r] = block_inverse.rows[i][j]
        rows.append(row)
    return QMatrix(rows, n)


# =============================================================================
# SUBSPACES
# =============================================================================

class Subspace:
    """Subspace of Q^n stored by its reduced row echelon basis."""

    __slots__ = ('ambient', 'basis', 'pivots')

    def __init__(self, ambient: int, vectors: Iterable[Sequence] = ()):
        rows, pivots = _rref_rows([to_vector(v) for v in vectors], ambient)
        self.ambient = ambient
        self.basis: Tuple[Vector, ...] = tuple(tuple(r) for r in rows)
        self.pivots: Tuple[int, ...] = tuple(pivots)

    @classmethod
    def full(cls, n: int) -> 'Subspace':
        return cls(n, [unit_vector(n, i) for i in range(n)])

    @classmethod
    def zero(cls, n: int) -> 'Subspace':
        return cls(n)

    @classmethod
    def coordinate(cls, n: int, indices: Iterable[int]) -> 'Subspace':
        return cls(n, [unit_vector(n, i) for i in indices])

    @property
    def dim(self) -> int:
        return len(self.basis)

    def reduce(self, vector: Sequence) -> Vector:
        """Remainder of a vector after clearing every pivot coordinate."""
        v = list(to_vector(vector))
        for row, p in zip(self.basis, self.pivots):
            if v[p]:
                c = v[p]
                v = [a - c * b if b else a for a, b in zip(v, row)]
        return tuple(v)

    def contains(self, vector: Sequence) -> bool:
        return is_zero_vector(self.reduce(vector))

    def issubset(self, other: 'Subspace') -> bool:
        return all(other.contains(v) for v in self.basis)

    def __add__(self, other: 'Subspace') -> 'Subspace':
        return Subspace(self.ambient, list(self.basis) + list(other.basis))

    def intersect(self, other: 'Subspace') -> 'Subspace':
        if not self.basis or not other.basis:
            return Subspace.zero(self.ambient)
        stacked = QMatrix.from_columns(
            list(self.basis) + [vec_scale(-1, v) for v in other.basis], self.ambient)
        k = self.dim
        vectors = []
        for z in stacked.kernel():
            w = zero_vector(self.ambient)
            for coeff, v in zip(z[:k], self.basis):
                if coeff:
                    w = vec_add(w, vec_scale(coeff, v))
            vectors.append(w)
        return Subspace(self.ambient, vectors)

    def image(self, matrix: QMatrix) -> 'Subspace':
        return Subspace(matrix.nrows, [matrix.apply(v) for v in self.basis])

    def as_columns(self) -> QMatrix:
        return QMatrix.from_columns(self.basis, self.ambient)

    def __eq__(self, other) -> bool:
        return isinstance(other, Subspace) and self.ambient == other.ambient and self.basis == other.basis

    def __hash__(self) -> int:
        return hash((self.ambient, self.basis))

    def __repr__(self) -> str:
        return f"Subspace(dim={self.dim}, ambient={self.ambient})"


@dataclass(frozen=True)
class QuotientMap:
    """Projection V -> V/S onto the coordinates of the non-pivot columns of S."""
    projection: QMatrix      # q x n, kernel exactly S
    lift: QMatrix            # n x q, projection · lift = I
    complement: Tuple[int, ...]

    @property
    def dim(self) -> int:
        return len(self.complement)


def quotient_map(sub: Subspace) -> QuotientMap:
    n = sub.ambient
    pivots = set(sub.pivots)
    complement = tuple(j for j in range(n) if j not in pivots)
    reduced_columns = [sub.reduce(unit_vector(n, j)) for j in range(n)]
    projection = QMatrix([[reduced_columns[j][c] for j in range(n)] for c in complement], n)
    lift = QMatrix.from_columns([unit_vector(n, c) for c in complement], n)
    return QuotientMap(projection=projection, lift=lift, complement=complement)


def preimage(matrix: QMatrix, target: Subspace) -> Subspace:
    """{x : matrix·x ∈ target}."""
    if target.dim == target.ambient:
        return Subspace.full(matrix.ncols)
    q = quotient_map(target)
    return Subspace(matrix.ncols, (q.projection @ matrix).kernel())


def kernel_subspace(matrix: QMatrix) -> Subspace:
    return Subspace(matrix.ncols, matrix.kernel())


def express_in_basis(basis: QMatrix, matrix: QMatrix) -> QMatrix:
    """Coordinates of the columns of `matrix` (assumed inside the column span of `basis`)."""
    return left_inverse(basis) @ matrix


# =============================================================================
# INTEGER NORMAL FORMS
# =============================================================================

def primitive_vector(values: Sequence[int]) -> Tuple[int, ...]:
    g = 0
    for v in values:
        g = gcd(g, int(v))
    if g == 0:
        raise ValueError("Zero vector has no primitive form")
    return tuple(int(v) // g for v in values)


def integer_vector(values: Sequence) -> Tuple[int, ...]:
    """Scale a rational vector to the primitive integer vector on the same ray."""
    fracs = to_vector(values)
    lcm = 1
    for x in fracs:
        lcm = lcm * x.denominator // gcd(lcm, x.denominator)
    return primitive_vector([int(x * lcm) for x in fracs])


@dataclass(frozen=True)
class SmithForm:
    """left · matrix · right = diagonal, with unimodular left and right."""
    diagonal: Tuple[Tuple[int, ...], ...]
    left: Tuple[Tuple[int, ...], ...]
    right: Tuple[Tuple[int, ...], ...]

    @property
    def invariant_factors(self) -> Tuple[int, ...]:
        n = min(len(self.diagonal), len(self.diagonal[0]) if self.diagonal else 0)
        return tuple(self.diagonal[i][i] for i in range(n) if self.diagonal[i][i] != 0)


def smith_normal_form(matrix: Sequence[Sequence[int]], ncols: Optional[int] = None) -> SmithForm:
    """Smith normal form over the integers with both transforms."""
    a = [[int(x) for x in row] for row in matrix]
    m = len(a)
    n = ncols if ncols is not None else (len(a[0]) if a else 0)
    left = [[1 if i == j else 0 for j in range(m)] for i in range(m)]
    right = [[1 if i == j else 0 for j in range(n)] for i in range(n)]

    def row_add(target, source, factor):
        a[target] = [x + factor * y for x, y in zip(a[target], a[source])]
        left[target] = [x + factor * y for x, y in zip(left[target], left[source])]

    def row_swap(i, j):
        a[i], a[j] = a[j], a[i]
        left[i], left[j] = left[j], left[i]

    def col_add(target, source, factor):
        for row in a:
            row[target] += factor * row[source]
        for row in right:
            row[target] += factor * row[source]

    def col_swap(i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in right:
            row[i], row[j] = row[j], row[i]

    t = 0
    while t < min(m, n):
        entries = [(abs(a[i][j]), i, j) for i in range(t, m) for j in range(t, n) if a[i][j]]
        if not entries:
            break
        _, pi, pj = min(entries)
        row_swap(t, pi)
        col_swap(t, pj)
        while True:
            while any(a[i][t] for i in range(t + 1, m)) or any(a[t][j] for j in range(t + 1, n)):
                for i in range(t + 1, m):
                    if a[i][t]:
                        row_add(i, t, -(a[i][t] // a[t][t]))
                        if a[i][t]:
                            row_swap(i, t)
                for j in range(t + 1, n):
                    if a[t][j]:
                        col_add(j, t, -(a[t][j] // a[t][t]))
                        if a[t][j]:
                            col_swap(j, t)
            bad = next(((i, j) for i in range(t + 1, m) for j in range(t + 1, n)
                        if a[i][j] % a[t][t]), None)
            if bad is None:
                break
            row_add(t, bad[0], 1)
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            left[t] = [-x for x in left[t]]
        t += 1

    return SmithForm(
        diagonal=tuple(tuple(r) for r in a),
        left=tuple(tuple(r) for r in left),
        right=tuple(tuple(r) for r in right),
    )
