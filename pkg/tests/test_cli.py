import json

import pytest

from app.main import EXIT_ERROR, EXIT_OK, main, parse_selectors
from app.core.errors import SelectorError

COMPLETE4 = {'ambient_dim': 2, 'rays': [[1, 0], [0, 1], [-1, 0], [0, -1]],
             'cones': [[0, 1], [1, 2], [2, 3], [3, 0]]}
CONE2 = {'ambient_dim': 2, 'rays': [[1, 0], [0, 1]], 'cones': [[0, 1]]}
SPLIT = {'ambient_dim': 2, 'rays': [[1, 0], [1, 1], [0, 1]], 'cones': [[0, 1], [1, 2]]}
SQUARE = {'ambient_dim': 3, 'rays': [[0, 0, 1], [1, 0, 1], [1, 1, 1], [0, 1, 1]], 'cones': [[0, 1, 2, 3]]}


def _json_output(capsys) -> dict:
    return json.loads(capsys.readouterr().out)


def test_invariants_json(fan_json, capsys):
    path = fan_json('complete4.json', COMPLETE4)
    code = main(['--format', 'json', 'invariants', '--fan', str(path), '--which', 'h,cd'])
    assert code == EXIT_OK
    document = _json_output(capsys)
    assert document['fan'] == 'complete4'
    assert document['invariants'] == {'h': '1+2t+t^2', 'cd': 'c^2+2d'}


def test_invariants_cross_check(fan_json, capsys):
    path = fan_json('complete4.json', COMPLETE4)
    main(['--format', 'json', 'invariants', '--fan', str(path), '--which', 'h', '--cross-check'])
    rows = _json_output(capsys)['cross_check']
    assert rows['h']['agrees'] is True


def test_unknown_selector_exits_with_an_error(fan_json, capsys):
    path = fan_json('complete4.json', COMPLETE4)
    code = main(['--format', 'json', 'invariants', '--fan', str(path), '--which', 'h,bogus'])
    assert code == EXIT_ERROR
    captured = capsys.readouterr()
    assert captured.out == ''
    assert 'selector_error' in captured.err


def test_parse_errors_exit_with_an_error(tmp_path, capsys):
    path = tmp_path / 'broken.json'
    path.write_text('{"ambient_dim": 2,')
    assert main(['invariants', '--fan', str(path), '--which', 'h']) == EXIT_ERROR
    assert 'parse_error' in capsys.readouterr().err


def test_mixed_json(fan_json, capsys):
    coarse = fan_json('cone2.json', CONE2)
    fine = fan_json('split.json', SPLIT)
    code = main(['--format', 'json', 'mixed', '--coarse', str(coarse), '--fine', str(fine),
                 '--which', 'mixed-h,local-h'])
    assert code == EXIT_OK
    document = _json_output(capsys)
    assert document['invariants'] == {'mixed_h': '1+uv', 'local_h': 't'}


def test_refine_writes_a_subdivision(fan_json, tmp_path, capsys):
    path = fan_json('square.json', SQUARE)
    out = tmp_path / 'out' / 'refined.json'
    code = main(['--format', 'json', 'refine', '--fan', str(path), '--out', str(out)])
    assert code == EXIT_OK
    document = _json_output(capsys)
    assert document['already_simplicial'] is False
    assert document['maximal_cones'] == 2
    written = json.loads(out.read_text())
    assert sorted(written) == ['coarse', 'fine', 'pi']


def test_verify_a_subdivision(fan_json, capsys):
    coarse = fan_json('cone2.json', CONE2)
    fine = fan_json('split.json', SPLIT)
    code = main(['--format', 'json', 'verify', '--coarse', str(coarse), '--fine', str(fine), '--suite', 'h'])
    assert code == EXIT_OK
    report = _json_output(capsys)
    assert report['summary'] == {'pass': 1, 'fail': 0, 'skipped': 0}
    assert report['checks'][0]['id'] == 'mixed_h/split'


def test_verify_needs_both_sides(fan_json, capsys):
    coarse = fan_json('cone2.json', CONE2)
    assert main(['verify', '--coarse', str(coarse), '--suite', 'h']) == EXIT_ERROR


def test_parse_selectors_keeps_order_and_drops_duplicates():
    assert parse_selectors('cd, h,cd', ['h', 'cd']) == ['cd', 'h']
    with pytest.raises(SelectorError):
        parse_selectors(' , ', ['h'])


def test_bad_degree_map_exits_with_an_error(fan_json, capsys):
    path = fan_json('cone2.json', dict(CONE2, degree_map=[[1, 2]]))
    assert main(['invariants', '--fan', str(path), '--which', 'hstar']) == EXIT_ERROR
    assert 'degree_map_mismatch' in capsys.readouterr().err
