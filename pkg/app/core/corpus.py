"""
Test Corpus
===========
The fixed fans and subdivisions the verification harness runs on, plus
seeded random complete fans in the plane.

Every entry is a subdivision; plain fans enter as identity subdivisions.
"""

import hashlib
import json
from dataclasses import dataclass, field
from itertools import product
from typing import List, Optional, Sequence, Tuple

import numpy as np

from .config_manager import get_config
from .fan import Fan, build_fan, single_cone_fan
from .linalg import primitive_vector
from .logging_utils import get_logger
from .subdivision import FanSubdivision, build_subdivision, identity_subdivision

logger = get_logger('corpus')

SUITES = ('h', 'hstar', 'cd', 'props')


@dataclass
class CorpusEntry:
    """One subdivision π: Σ -> Δ with the suites it takes part in."""
    name: str
    subdivision: FanSubdivision
    suites: Tuple[str, ...] = SUITES
    tags: Tuple[str, ...] = field(default_factory=tuple)

    @property
    def coarse(self) -> Fan:
        return self.subdivision.coarse

    @property
    def fine(self) -> Fan:
        return self.subdivision.fine

    @property
    def is_identity(self) -> bool:
        return self.subdivision.is_identity()

    def runs(self, suite: str) -> bool:
        return suite in self.suites

    def to_dict(self) -> dict:
        return {
            'name': self.name,
            'suites': list(self.suites),
            'tags': list(self.tags),
            'subdivision': self.subdivision.to_dict(),
        }


# =============================================================================
# FAN BUILDERS
# =============================================================================

def cone(rays: Sequence[Sequence[int]], label: str) -> Fan:
    return single_cone_fan([list(r) for r in rays], label=label)


def cyclic_fan(rays: Sequence[Sequence[int]], label: str, closed: bool = True) -> Fan:
    """Planar fan on rays listed counterclockwise; consecutive rays span the 2-cones."""
    n = len(rays)
    count = n if closed else n - 1
    maximal = [[i, (i + 1) % n] for i in range(count)]
    return build_fan([list(r) for r in rays], maximal, ambient_dim=2, label=label)


def complete_polygon_fan(rays: Sequence[Sequence[int]], label: str) -> Fan:
    return cyclic_fan(rays, label, closed=True)


def octant_fan() -> Fan:
    """Normal fan of the cube: the eight coordinate octants of R^3."""
    rays = [[1, 0, 0], [0, 1, 0], [0, 0, 1], [-1, 0, 0], [0, -1, 0], [0, 0, -1]]
    maximal = [[i if s == 1 else i + 3 for i, s in enumerate(signs)] for signs in product((1, -1), repeat=3)]
    return build_fan(rays, maximal, ambient_dim=3, label='cube-normal-fan')


SQUARE_RAYS = [[0, 0, 1], [1, 0, 1], [1, 1, 1], [0, 1, 1]]


def square_cone() -> Fan:
    return cone(SQUARE_RAYS, 'square-cone')


def square_diagonal_split() -> Fan:
    return build_fan(SQUARE_RAYS, [[0, 1, 2], [0, 2, 3]], ambient_dim=3, label='square-cone-split')


def _cross(a: Sequence[int], b: Sequence[int]) -> int:
    return a[0] * b[1] - a[1] * b[0]


def random_complete_fan(rng: np.random.Generator, label: str, max_coordinate: int = 3) -> Fan:
    """Complete planar fan on 3-6 random primitive rays; redraws until every sector is pointed."""
    while True:
        m = int(rng.integers(3, 7))
        raw = rng.integers(-max_coordinate, max_coordinate + 1, size=(m, 2))
        rays = {primitive_vector([int(x), int(y)]) for x, y in raw if x or y}
        if len(rays) < 3:
            continue
        ordered = sorted(rays, key=lambda r: float(np.arctan2(r[1], r[0])))
        pairs = zip(ordered, ordered[1:] + ordered[:1])
        if all(_cross(a, b) > 0 for a, b in pairs):
            return complete_polygon_fan(ordered, label)


# =============================================================================
# DEFAULT CORPUS
# =============================================================================

def _identity(name: str, fan: Fan, suites: Tuple[str, ...] = SUITES, tags: Tuple[str, ...] = ()) -> CorpusEntry:
    return CorpusEntry(name=name, subdivision=identity_subdivision(fan), suites=suites, tags=tags)


def _refined(name: str, fine: Fan, coarse: Fan, tags: Tuple[str, ...] = ()) -> CorpusEntry:
    return CorpusEntry(name=name, subdivision=build_subdivision(fine, coarse), tags=tags)


def default_corpus(seed: Optional[int] = None, random_fans: Optional[int] = None,
                   include_dim4: Optional[bool] = None) -> List[CorpusEntry]:
    """The fixed entries followed by seeded random complete fans; deterministic for a fixed seed."""
    config = get_config()
    seed = int(config.get('corpus', 'seed', default=20240611)) if seed is None else seed
    if random_fans is None:
        random_fans = int(config.get('corpus', 'random_complete_fans', default=2))
    if include_dim4 is None:
        include_dim4 = bool(config.get('corpus', 'include_dim4_smoke', default=True))

    entries: List[CorpusEntry] = [
        _identity('ray', cone([[1]], 'ray'), tags=('cone',)),
        _identity('cone2', cone([[1, 0], [0, 1]], 'cone2'), tags=('cone',)),
        _identity('segment-cone', cone([[1, 0], [1, 2]], 'segment-cone'), tags=('cone',)),
        _identity('square-cone', square_cone(), tags=('cone',)),
    ]
    polygons = {
        3: [[1, 0], [0, 1], [-1, -1]],
        4: [[1, 0], [0, 1], [-1, 0], [0, -1]],
        5: [[1, 0], [1, 1], [0, 1], [-1, 0], [0, -1]],
        6: [[1, 0], [1, 1], [0, 1], [-1, 0], [-1, -1], [0, -1]],
    }
    for m, rays in polygons.items():
        entries.append(_identity(f'complete-{m}', complete_polygon_fan(rays, f'complete-{m}'), tags=('complete',)))
    entries.append(_identity('cube-normal-fan', octant_fan(), tags=('complete',)))

    entries.append(_refined(
        'cone2-split',
        cyclic_fan([[1, 0], [1, 1], [0, 1]], 'cone2-split', closed=False),
        cone([[1, 0], [0, 1]], 'cone2'),
        tags=('cone',)))
    entries.append(_refined(
        'segment-cone-split',
        cyclic_fan([[1, 0], [1, 1], [1, 2]], 'segment-cone-split', closed=False),
        cone([[1, 0], [1, 2]], 'segment-cone'),
        tags=('cone',)))
    entries.append(_refined(
        'square-cone-split', square_diagonal_split(), square_cone(), tags=('cone',)))
    entries.append(_refined(
        'complete-4-plus-diagonal',
        complete_polygon_fan(polygons[5], 'complete-5'),
        complete_polygon_fan(polygons[4], 'complete-4'),
        tags=('complete',)))

    rng = np.random.default_rng(seed)
    for i in range(random_fans):
        label = f'random-complete-{i}'
        entries.append(_identity(label, random_complete_fan(rng, label), tags=('complete', 'random')))

    if include_dim4:
        entries.append(_identity('cone4', cone([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]], 'cone4'),
                                 suites=('h',), tags=('cone', 'smoke')))
    logger.info(f"[Corpus] {len(entries)} entries (seed {seed})")
    return entries


def corpus_hash(entries: Sequence[CorpusEntry]) -> str:
    """sha256 of the canonical JSON of every entry."""
    payload = json.dumps([e.to_dict() for e in entries], sort_keys=True, separators=(',', ':'))
    return hashlib.sha256(payload.encode()).hexdigest()


def find_entry(entries: Sequence[CorpusEntry], name: str) -> Optional[CorpusEntry]:
    return next((e for e in entries if e.name == name), None)
