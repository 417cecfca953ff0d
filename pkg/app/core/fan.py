"""
Fans
====
Rational polyhedral fans with their face lattices, links, boundary
subfans and quasi-convexity certificates.

Cones are indexed by (dimension, sorted ray indices), so the zero cone o
always has index 0. A Fan built as a subfan or a link remembers the
parent cone of each of its cones in `to_parent`.
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

from .convexity import separating_functional
from .errors import (
    ConeNotInFan,
    IntersectionNotAFace,
    NonPointedCone,
    NonPrimitiveRay,
    NotPurelyDimensional,
    ParseError,
    RedundantRay,
)
from .geometry import (
    ConeGeometry,
    normalized_volume,
    pulling_triangulation,
    quotient_projection,
    span_matrix,
)
from .linalg import Vector, dot, primitive_vector, to_vector
from .logging_utils import get_logger

logger = get_logger('fan')

RationalVector = Vector


# =============================================================================
# CONES AND FANS
# =============================================================================

@dataclass(frozen=True)
class Cone:
    """A cone of a fan: its rays (indices into the fan's ray table) and dimension."""
    index: int
    rays: Tuple[int, ...]
    dim: int
    span_basis: Tuple[RationalVector, ...]

    @property
    def is_zero(self) -> bool:
        return not self.rays

    def is_simplicial(self) -> bool:
        return len(self.rays) == self.dim

    def to_dict(self) -> dict:
        return {'index': self.index, 'rays': list(self.rays), 'dim': self.dim}


class Fan:
    """Immutable fan: ray table, every cone and the face relation."""

    def __init__(self, ambient_dim: int, rays: Sequence[Sequence[int]], faces: Iterable[FrozenSet[int]],
                 label: Optional[str] = None, normalized: bool = False,
                 to_parent: Optional[Dict[int, int]] = None, parent: Optional['Fan'] = None):
        self.ambient_dim = ambient_dim
        self.rays: Tuple[Tuple[int, ...], ...] = tuple(tuple(int(x) for x in r) for r in rays)
        self.label = label
        self.normalized = normalized
        self.parent = parent

        face_sets = sorted(set(frozenset(f) for f in faces), key=lambda f: (self._rank(f), sorted(f)))
        cones = []
        for i, f in enumerate(face_sets):
            ray_list = tuple(sorted(f))
            basis = span_matrix([self.rays[r] for r in ray_list], ambient_dim) if ray_list else None
            cones.append(Cone(
                index=i,
                rays=ray_list,
                dim=basis.ncols if basis is not None else 0,
                span_basis=tuple(basis.columns()) if basis is not None else (),
            ))
        self.cones: Tuple[Cone, ...] = tuple(cones)
        self._index: Dict[Tuple[int, ...], int] = {c.rays: c.index for c in self.cones}

        n = len(self.cones)
        ray_sets = [frozenset(c.rays) for c in self.cones]
        self.faces: Dict[int, Tuple[int, ...]] = {
            i: tuple(j for j in range(n) if ray_sets[j] <= ray_sets[i]) for i in range(n)
        }
        self.star: Dict[int, Tuple[int, ...]] = {
            i: tuple(j for j in range(n) if ray_sets[i] <= ray_sets[j]) for i in range(n)
        }
        self.facets: Dict[int, Tuple[int, ...]] = {
            i: tuple(j for j in self.faces[i] if self.cones[j].dim == self.cones[i].dim - 1) for i in range(n)
        }
        self.cofacets: Dict[int, Tuple[int, ...]] = {
            i: tuple(j for j in self.star[i] if self.cones[j].dim == self.cones[i].dim + 1) for i in range(n)
        }
        self.maximal: Tuple[int, ...] = tuple(i for i in range(n) if len(self.star[i]) == 1)
        self.to_parent: Dict[int, int] = dict(to_parent or {})
        self._geometry: Dict[int, ConeGeometry] = {}

    def _rank(self, face: FrozenSet[int]) -> int:
        if not face:
            return 0
        return span_matrix([self.rays[r] for r in sorted(face)], self.ambient_dim).ncols

    # -------------------------------------------------------------------------
    # Queries
    # -------------------------------------------------------------------------

    def __len__(self) -> int:
        return len(self.cones)

    def __repr__(self) -> str:
        return f"Fan({self.label or 'unnamed'}, d={self.ambient_dim}, cones={len(self.cones)})"

    @property
    def dim(self) -> int:
        """Largest cone dimension; -1 for the empty fan."""
        return max((c.dim for c in self.cones), default=-1)

    @property
    def zero(self) -> int:
        if not self.cones or self.cones[0].rays:
            raise ConeNotInFan('o')
        return 0

    def cone_index(self, rays: Iterable[int]) -> int:
        key = tuple(sorted(rays))
        if key not in self._index:
            raise ConeNotInFan(list(key))
        return self._index[key]

    def find_cone(self, rays: Iterable[int]) -> Optional[int]:
        return self._index.get(tuple(sorted(rays)))

    def meet(self, a: int, b: int) -> Optional[int]:
        """Index of the common face of cones a and b."""
        return self.find_cone(set(self.cones[a].rays) & set(self.cones[b].rays))

    def is_pure(self) -> bool:
        return len({self.cones[i].dim for i in self.maximal}) <= 1

    def require_pure(self):
        if not self.is_pure():
            raise NotPurelyDimensional([self.cones[i].dim for i in self.maximal])

    def is_simplicial(self) -> bool:
        return all(c.is_simplicial() for c in self.cones)

    def ray_vectors(self, cone: int) -> List[Tuple[int, ...]]:
        return [self.rays[r] for r in self.cones[cone].rays]

    def geometry(self, cone: int) -> ConeGeometry:
        if cone not in self._geometry:
            self._geometry[cone] = ConeGeometry(self.ray_vectors(cone), self.ambient_dim)
        return self._geometry[cone]

    def f_vector(self) -> List[int]:
        counts = [0] * (self.dim + 1)
        for c in self.cones:
            counts[c.dim] += 1
        return counts

    def closure(self, cones: Iterable[int]) -> FrozenSet[int]:
        """Smallest subfan (as a set of cone indices) containing the given cones."""
        out = set()
        for c in cones:
            out.update(self.faces[c])
        return frozenset(out)

    def maximal_in(self, subset: Iterable[int]) -> List[int]:
        members = set(subset)
        return sorted(c for c in members if not any(o != c and o in members for o in self.star[c]))

    def subfan(self, cones: Iterable[int], label: Optional[str] = None) -> 'Fan':
        """The subfan generated by `cones` as a Fan, keeping only the rays it uses."""
        closed = self.closure(cones)
        used = sorted({r for c in closed for r in self.cones[c].rays})
        renumber = {r: i for i, r in enumerate(used)}
        faces = [frozenset(renumber[r] for r in self.cones[c].rays) for c in closed]
        sub = Fan(self.ambient_dim, [self.rays[r] for r in used], faces,
                  label=label or self.label, parent=self)
        sub.to_parent = {
            i: self.cone_index(used[r] for r in cone.rays) for i, cone in enumerate(sub.cones)
        }
        return sub

    def to_dict(self) -> dict:
        """Fan JSON: ambient dimension, rays and maximal cones."""
        return {
            'ambient_dim': self.ambient_dim,
            'rays': [list(r) for r in self.rays],
            'cones': [list(self.cones[i].rays) for i in self.maximal],
        }


# =============================================================================
# CONSTRUCTION
# =============================================================================

def build_fan(rays: Sequence[Sequence[int]], maximal_cones: Sequence[Sequence[int]],
              ambient_dim: Optional[int] = None, certify: bool = True, strict: bool = False,
              label: Optional[str] = None) -> Fan:
    """Build a fan from rays and generating cones, computing the full face lattice.

    With certify=True every pair of generating cones is checked to meet
    in a common face. Non-primitive rays are normalized (and flagged)
    unless strict=True.
    """
    if ambient_dim is None:
        if not rays:
            raise ParseError("ambient_dim is required when there are no rays")
        ambient_dim = len(rays[0])
    if not maximal_cones:
        raise ParseError("a fan needs at least one cone; use [[]] for the fan of the origin")

    normalized = False
    clean: List[Tuple[int, ...]] = []
    for i, ray in enumerate(rays):
        if len(ray) != ambient_dim:
            raise ParseError(f"ray {i} has length {len(ray)}, expected {ambient_dim}")
        if all(int(x) == 0 for x in ray):
            raise ParseError(f"ray {i} is the zero vector")
        prim = primitive_vector(ray)
        if prim != tuple(int(x) for x in ray):
            if strict:
                raise NonPrimitiveRay(ray)
            logger.warning(f"[Fan] ray {list(ray)} normalized to {list(prim)}")
            normalized = True
        clean.append(prim)
    if len(set(clean)) != len(clean):
        raise ParseError("duplicate rays after normalization")

    faces = set()
    generators: List[FrozenSet[int]] = []
    for cone in maximal_cones:
        members = sorted(set(int(r) for r in cone))
        for r in members:
            if not 0 <= r < len(clean):
                raise ParseError(f"cone {members} refers to missing ray {r}")
        if not members:
            faces.add(frozenset())
            generators.append(frozenset())
            continue
        geo = ConeGeometry([clean[r] for r in members], ambient_dim)
        if not geo.is_pointed():
            raise NonPointedCone([list(clean[r]) for r in members])
        local_faces = geo.faces()
        singles = {next(iter(f)) for f in local_faces if len(f) == 1}
        for pos, r in enumerate(members):
            if pos not in singles:
                raise RedundantRay(members, list(clean[r]))
        for f in local_faces:
            faces.add(frozenset(members[i] for i in f))
        generators.append(frozenset(members))

    if certify:
        _certify_intersections(clean, generators, faces, ambient_dim)

    fan = Fan(ambient_dim, clean, faces, label=label, normalized=normalized)
    logger.debug(f"[Fan] built {fan!r}")
    return fan


def _certify_intersections(rays, generators, faces, ambient_dim):
    """Fan axiom: any two generating cones meet in a common face."""
    tops = [g for g in generators if not any(g < other for other in generators)]
    for i, a in enumerate(tops):
        faces_a = {f for f in faces if f <= a}
        for b in tops[i + 1:]:
            if a == b:
                continue
            common = a & b
            faces_b = {f for f in faces if f <= b}
            if common not in faces_a or common not in faces_b:
                raise IntersectionNotAFace(sorted(a), sorted(b), 'shared rays do not span a common face')
            h = separating_functional(
                [rays[r] for r in sorted(common)],
                [rays[r] for r in sorted(a - common)],
                [rays[r] for r in sorted(b - common)],
                ambient_dim,
            )
            if h is None:
                raise IntersectionNotAFace(sorted(a), sorted(b), 'no separating hyperplane')


def single_cone_fan(rays: Sequence[Sequence[int]], label: Optional[str] = None) -> Fan:
    """⟨σ⟩: the fan of all faces of one cone."""
    ambient = len(rays[0]) if rays else 0
    return build_fan(rays, [list(range(len(rays)))], ambient_dim=ambient, certify=False, label=label)


# =============================================================================
# LINKS AND BOUNDARIES
# =============================================================================

def link(fan: Fan, sigma: int) -> Fan:
    """link_Δ σ in Z^d / (Span σ ∩ Z^d), with to_parent mapping each link cone to τ ≥ σ."""
    if not 0 <= sigma < len(fan.cones):
        raise ConeNotInFan(sigma)
    base = fan.cones[sigma]
    if base.is_zero:
        result = Fan(fan.ambient_dim, fan.rays, [frozenset(c.rays) for c in fan.cones],
                     label=fan.label, parent=fan)
        result.to_parent = {i: i for i in range(len(fan.cones))}
        return result
    projection = quotient_projection(fan.ray_vectors(sigma), fan.ambient_dim)
    target_dim = projection.nrows
    base_rays = set(base.rays)

    ray_of: Dict[int, int] = {}
    new_rays: List[Tuple[int, ...]] = []
    for tau in fan.cofacets[sigma]:
        extra = next(r for r in fan.cones[tau].rays if r not in base_rays)
        image = projection.apply(to_vector(fan.rays[extra]))
        ray_of[tau] = len(new_rays)
        new_rays.append(primitive_vector([int(x) for x in image]))

    faces = []
    parents = []
    for tau in fan.star[sigma]:
        faces.append(frozenset(ray_of[c] for c in fan.cofacets[sigma] if c in fan.faces[tau]))
        parents.append(tau)
    result = Fan(target_dim, new_rays, faces, label=f"link({fan.label or 'fan'}, {sigma})", parent=fan)
    by_rays = {face: parent for face, parent in zip(faces, parents)}
    result.to_parent = {c.index: by_rays[frozenset(c.rays)] for c in result.cones}
    return result


def boundary_cones(fan: Fan) -> FrozenSet[int]:
    """Cone indices of ∂Δ: non-maximal cones lying in exactly one maximal cone, closed under faces."""
    fan.require_pure()
    maximal = set(fan.maximal)
    qualifying = [c for c in range(len(fan.cones))
                  if c not in maximal and sum(1 for m in fan.star[c] if m in maximal) == 1]
    return fan.closure(qualifying)


def boundary_fan(fan: Fan) -> Fan:
    cones = boundary_cones(fan)
    return fan.subfan(cones, label=f"boundary({fan.label or 'fan'})")


# =============================================================================
# QUASI-CONVEXITY
# =============================================================================

COMPLETE = 'Complete'
SUPPORTED_ON_CONE = 'SupportedOnCone'
CONVEX_FULL_DIM_SUPPORT = 'ConvexFullDimSupport'
COMPLEMENT_CONVEX = 'ComplementConvex'
UNKNOWN = 'Unknown'

QUASI_CONVEX_KINDS = (COMPLETE, SUPPORTED_ON_CONE, CONVEX_FULL_DIM_SUPPORT, COMPLEMENT_CONVEX, UNKNOWN)


@dataclass(frozen=True)
class QuasiConvexity:
    """Which recognized quasi-convex class a fan was certified in."""
    kind: str
    detail: str = ''

    @property
    def certified(self) -> bool:
        return self.kind != UNKNOWN

    def to_dict(self) -> dict:
        return {'class': self.kind, 'detail': self.detail}


def is_complete(fan: Fan) -> bool:
    if fan.dim != fan.ambient_dim or not fan.is_pure():
        return False
    if fan.ambient_dim == 0:
        return True
    maximal = set(fan.maximal)
    for c in fan.cones:
        if c.dim == fan.ambient_dim - 1:
            if sum(1 for m in fan.star[c.index] if m in maximal) != 2:
                return False
    return True


def _supported_on_cone(fan: Fan) -> bool:
    everything = ConeGeometry(list(fan.rays), fan.ambient_dim) if fan.rays else None
    if everything is None:
        return True
    if not everything.is_pointed() or everything.dim != fan.dim:
        return False
    extreme = sorted(next(iter(f)) for f in everything.faces() if len(f) == 1)
    target = normalized_volume(pulling_triangulation(extreme, fan.rays, fan.ambient_dim), fan.rays, everything)
    covered = Fraction(0)
    for m in fan.maximal:
        simplices = pulling_triangulation(fan.cones[m].rays, fan.rays, fan.ambient_dim)
        covered += normalized_volume(simplices, fan.rays, everything)
    return covered == target


def _boundary_walls(fan: Fan) -> List[Tuple[int, int]]:
    """(wall, maximal cone) for every (d-1)-cone in exactly one maximal cone."""
    maximal = set(fan.maximal)
    out = []
    for c in fan.cones:
        if c.dim == fan.dim - 1:
            owners = [m for m in fan.star[c.index] if m in maximal]
            if len(owners) == 1:
                out.append((c.index, owners[0]))
    return out


def _wall_normal(fan: Fan, wall: int, owner: int) -> Vector:
    """Inner normal in R^d of the facet `wall` of the full-dimensional cone `owner`."""
    geo = fan.geometry(owner)
    members = fan.cones[owner].rays
    zero = frozenset(members.index(r) for r in fan.cones[wall].rays)
    normal = next(n for n, z in geo.facets if z == zero)
    return tuple(dot(normal, col) for col in geo.coordinates.columns())


def _convex_full_dim(fan: Fan) -> bool:
    if fan.dim != fan.ambient_dim:
        return False
    for wall, owner in _boundary_walls(fan):
        normal = _wall_normal(fan, wall, owner)
        if any(dot(normal, r) < 0 for r in fan.rays):
            return False
    return True


def _complement_convex(fan: Fan) -> bool:
    if fan.dim != fan.ambient_dim:
        return False
    walls = _boundary_walls(fan)
    if not walls:
        return False
    boundary_rays = sorted({r for w, _ in walls for r in fan.cones[w].rays})
    outside = ConeGeometry([fan.rays[r] for r in boundary_rays], fan.ambient_dim)
    if outside.dim != fan.ambient_dim or not outside.is_pointed():
        return False
    if any(outside.in_relative_interior(r) for r in fan.rays):
        return False
    d_facets = []
    for normal, zero in outside.facets:
        global_normal = tuple(dot(normal, col) for col in outside.coordinates.columns())
        d_facets.append((global_normal, frozenset(boundary_rays[i] for i in zero)))
    covered: Dict[int, List[int]] = {i: [] for i in range(len(d_facets))}
    for wall, owner in walls:
        wall_rays = set(fan.cones[wall].rays)
        home = next((i for i, (_, zero) in enumerate(d_facets) if wall_rays <= zero), None)
        if home is None:
            return False
        normal = d_facets[home][0]
        off = [r for r in fan.cones[owner].rays if r not in wall_rays]
        if not all(dot(normal, fan.rays[r]) < 0 for r in off):
            return False
        covered[home].append(wall)
    for i, (_, zero) in enumerate(d_facets):
        frame = ConeGeometry([fan.rays[r] for r in sorted(zero)], fan.ambient_dim)
        extreme = sorted(sorted(zero)[next(iter(f))] for f in frame.faces() if len(f) == 1)
        target = normalized_volume(pulling_triangulation(extreme, fan.rays, fan.ambient_dim), fan.rays, frame)
        total = Fraction(0)
        for wall in covered[i]:
            total += normalized_volume(
                pulling_triangulation(fan.cones[wall].rays, fan.rays, fan.ambient_dim), fan.rays, frame)
        if total != target:
            return False
    return True


def classify_quasi_convex(fan: Fan) -> QuasiConvexity:
    """Certify membership in a recognized quasi-convex class; Unknown otherwise."""
    if not fan.cones:
        return QuasiConvexity(UNKNOWN, 'empty fan')
    if not fan.is_pure():
        logger.warning(f"[Fan] {fan.label or 'fan'} is not purely dimensional; quasi-convexity unknown")
        return QuasiConvexity(UNKNOWN, 'not purely dimensional')
    if is_complete(fan):
        return QuasiConvexity(COMPLETE, 'every wall lies in two maximal cones')
    if _supported_on_cone(fan):
        return QuasiConvexity(SUPPORTED_ON_CONE, 'support equals the cone over all rays')
    if _convex_full_dim(fan):
        return QuasiConvexity(CONVEX_FULL_DIM_SUPPORT, 'every boundary wall supports all rays')
    if _complement_convex(fan):
        return QuasiConvexity(COMPLEMENT_CONVEX, 'complement closes up to a single cone')
    logger.warning(f"[Fan] {fan.label or 'fan'}: no quasi-convexity certificate")
    return QuasiConvexity(UNKNOWN, 'no recognized class')
