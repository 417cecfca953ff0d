"""Shared fans and subdivisions for the test suite."""

import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent.parent))

from app.core.corpus import complete_polygon_fan, cone, cyclic_fan, square_cone as _square_cone, \
    square_diagonal_split
from app.core.subdivision import build_subdivision

POLYGON_RAYS = {
    3: [[1, 0], [0, 1], [-1, -1]],
    4: [[1, 0], [0, 1], [-1, 0], [0, -1]],
    5: [[1, 0], [1, 1], [0, 1], [-1, 0], [0, -1]],
    6: [[1, 0], [1, 1], [0, 1], [-1, 0], [-1, -1], [0, -1]],
}


@pytest.fixture
def ray_fan():
    return cone([[1]], 'ray')


@pytest.fixture
def cone2():
    return cone([[1, 0], [0, 1]], 'cone2')


@pytest.fixture
def segment_cone():
    """Cone over a lattice segment of length 2."""
    return cone([[1, 0], [1, 2]], 'segment-cone')


@pytest.fixture
def square_cone():
    return _square_cone()


@pytest.fixture
def complete4():
    return complete_polygon_fan(POLYGON_RAYS[4], 'complete-4')


@pytest.fixture
def complete5():
    return complete_polygon_fan(POLYGON_RAYS[5], 'complete-5')


@pytest.fixture
def split2(cone2):
    """The unimodular 2-cone split by the ray (1,1)."""
    fine = cyclic_fan([[1, 0], [1, 1], [0, 1]], 'cone2-split', closed=False)
    return build_subdivision(fine, cone2)


@pytest.fixture
def segment_split(segment_cone):
    fine = cyclic_fan([[1, 0], [1, 1], [1, 2]], 'segment-cone-split', closed=False)
    return build_subdivision(fine, segment_cone)


@pytest.fixture
def square_split(square_cone):
    return build_subdivision(square_diagonal_split(), square_cone)


@pytest.fixture
def complete4_plus_diagonal(complete4, complete5):
    return build_subdivision(complete5, complete4)


@pytest.fixture
def fan_json(tmp_path):
    """Write a fan document and return its path."""
    import json

    def write(name, data):
        path = tmp_path / name
        path.write_text(json.dumps(data, indent=2))
        return path

    return write
