import json

import pytest

from app.core.data_loader import FanLoader, dumps, to_text
from app.core.errors import DegreeMapMismatch, NotGorenstein, ParseError, RedundantRay
from app.core.polynomials import t_poly

CONE2 = {'ambient_dim': 2, 'rays': [[1, 0], [0, 1]], 'cones': [[0, 1]]}
SPLIT = {'ambient_dim': 2, 'rays': [[1, 0], [1, 1], [0, 1]], 'cones': [[0, 1], [1, 2]]}


def test_load_fan_from_a_file(fan_json):
    path = fan_json('cone2.json', CONE2)
    loaded = FanLoader().load_fan(path)
    assert loaded.fan.label == 'cone2'
    assert loaded.fan.f_vector() == [1, 2, 1]
    assert loaded.degree_map is None
    assert loaded.source == str(path)


def test_invalid_json_reports_the_line(tmp_path):
    path = tmp_path / 'broken.json'
    path.write_text('{\n  "ambient_dim": 2,\n  "rays": [[1, 0],],\n  "cones": [[0]]\n}\n')
    with pytest.raises(ParseError) as info:
        FanLoader().load_fan(path)
    assert info.value.context['line'] == 3
    assert info.value.context['source'] == str(path)
    assert str(path) + ':3' in info.value.message


def test_missing_field(fan_json):
    path = fan_json('no-cones.json', {'ambient_dim': 2, 'rays': [[1, 0]]})
    with pytest.raises(ParseError, match="missing field 'cones'"):
        FanLoader().load_fan(path)


def test_non_integer_rays_point_at_the_rays_key(fan_json):
    path = fan_json('floats.json', {'ambient_dim': 2, 'rays': [[1.5, 0], [0, 1]], 'cones': [[0, 1]]})
    with pytest.raises(ParseError) as info:
        FanLoader().load_fan(path)
    assert info.value.context['line'] == 3


def test_geometry_errors_pass_through_with_their_source(fan_json):
    path = fan_json('redundant.json', {'ambient_dim': 2, 'rays': [[1, 0], [1, 1], [0, 1]], 'cones': [[0, 1, 2]]})
    with pytest.raises(RedundantRay) as info:
        FanLoader().load_fan(path)
    assert info.value.context['source'] == str(path)


def test_degree_map_is_read_per_maximal_cone(fan_json):
    document = dict(SPLIT, degree_map=[[1, 0], [0, 1]])
    loaded = FanLoader().load_fan(fan_json('split.json', document))
    assert loaded.degree_map is not None

    wrong = dict(SPLIT, degree_map=[[1, 1]])
    with pytest.raises(ParseError, match='degree_map'):
        FanLoader().load_fan(fan_json('wrong.json', wrong))


def test_inline_subdivision_document():
    loaded = FanLoader().load_subdivision_document({'coarse': CONE2, 'fine': SPLIT})
    pi = loaded.subdivision
    assert pi.coarse.label == 'coarse'
    assert pi.fine.label == 'fine'
    assert not pi.is_identity()


def test_subdivision_document_with_relative_paths(tmp_path):
    (tmp_path / 'coarse.json').write_text(json.dumps(CONE2))
    (tmp_path / 'fine.json').write_text(json.dumps(SPLIT))
    document = tmp_path / 'pi.json'
    document.write_text(json.dumps({'coarse': 'coarse.json', 'fine': 'fine.json'}))
    loaded = FanLoader().load_subdivision_document(document)
    assert loaded.coarse.fan.label == 'coarse'
    assert loaded.fine.fan.f_vector() == [1, 3, 2]


def test_subdivision_document_needs_both_sides():
    with pytest.raises(ParseError, match="missing field 'fine'"):
        FanLoader().load_subdivision_document({'coarse': CONE2})


def test_dumps_is_canonical():
    text = dumps({'b': 1, 'a': [1, 2]})
    assert text.endswith('\n')
    assert text.index('"a"') < text.index('"b"')
    assert json.loads(text) == {'a': [1, 2], 'b': 1}


def test_to_text_renders_polynomials():
    assert to_text({'h': t_poly(1, 2, 1)}) == {'h': '1+2t+t^2'}


def test_degree_map_must_be_one_on_every_ray(fan_json):
    path = fan_json('off-by-ray.json', dict(CONE2, degree_map=[[1, 2]]))
    with pytest.raises(DegreeMapMismatch) as info:
        FanLoader().load_fan(path)
    assert info.value.context['ray'] == [0, 1]
    assert info.value.context['source'] == str(path)


def test_degree_map_must_be_integral_on_lattice_points(fan_json):
    segment = {'ambient_dim': 2, 'rays': [[1, 0], [1, 2]], 'cones': [[0, 1]]}
    with pytest.raises(DegreeMapMismatch):
        FanLoader().load_fan(fan_json('wrong-ray.json', dict(segment, degree_map=[[0, 1]])))
    steep = {'ambient_dim': 2, 'rays': [[1, 0], [2, 3]], 'cones': [[0, 1]]}
    with pytest.raises(NotGorenstein) as info:
        FanLoader().load_fan(fan_json('steep.json', dict(steep, degree_map=[['1', '-1/3']])))
    assert info.value.context['witness'] == [1, 1]


def test_degree_map_functional_length(fan_json):
    with pytest.raises(ParseError, match='length'):
        FanLoader().load_fan(fan_json('short.json', dict(CONE2, degree_map=[[1]])))
