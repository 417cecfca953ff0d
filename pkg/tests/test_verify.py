import pytest

from app.core.corpus import CorpusEntry, SUITES, cone, corpus_hash, default_corpus
from app.core.errors import SelectorError
from app.core.subdivision import identity_subdivision
from app.core.verify import (
    FAIL,
    PASS,
    SKIPPED,
    check_mixed_cd,
    check_mixed_h,
    check_refined_ehrhart,
    run_verification,
    single_report,
    validate_suite,
    verify_subdivision,
)


def test_mixed_h_check_passes_on_the_split_cone(split2):
    result = check_mixed_h(split2)
    assert result.status == PASS
    assert result.id == 'mixed_h/cone2-split'
    assert result.witness is None


def test_mixed_cd_check_passes_on_the_split_cone(split2):
    assert check_mixed_cd(split2).status == PASS


def test_refined_ehrhart_check_on_the_split_segment_cone(segment_split):
    assert check_refined_ehrhart(segment_split).status == PASS


def test_non_gorenstein_cone_is_skipped_not_failed():
    pi = identity_subdivision(cone([[3, 1], [1, 3]], 'skewed'))
    result = check_refined_ehrhart(pi)
    assert result.status == SKIPPED
    assert result.witness['reason']['error'] == 'not_gorenstein'


def test_unknown_suite_is_a_selector_error(split2):
    with pytest.raises(SelectorError):
        validate_suite('everything')
    with pytest.raises(SelectorError):
        verify_subdivision(split2, 'bogus')


def test_report_layout(split2):
    report = single_report(split2, 'h')
    data = report.to_dict()
    assert sorted(data) == ['checks', 'corpus_hash', 'summary']
    assert data['summary'] == {PASS: 1, FAIL: 0, SKIPPED: 0}
    assert data['checks'][0]['reference']
    assert not report.failed


def test_props_suite_on_the_split_cone(split2):
    results = {r.id.split('/')[0]: r for r in verify_subdivision(split2, 'props')}
    assert {'local_h', 'link_h', 'decomposition', 't_poincare', 'ehrhart_reciprocity'} <= set(results)
    for check in ('local_h', 'link_h', 'g_h', 'eulerian', 'ehrhart_reciprocity'):
        assert results[check].status == PASS, results[check].to_dict()


def test_worker_pool_keeps_corpus_order(cone2, complete4, split2):
    entries = [
        CorpusEntry('cone2', identity_subdivision(cone2), suites=('h',)),
        CorpusEntry('split', split2, suites=('h',)),
        CorpusEntry('complete-4', identity_subdivision(complete4), suites=('h',)),
    ]
    serial = run_verification(entries, 'h', workers=1)
    pooled = run_verification(entries, 'h', workers=3)
    assert [c.id for c in pooled.checks] == [c.id for c in serial.checks] == \
        ['mixed_h/cone2', 'mixed_h/split', 'mixed_h/complete-4']
    assert pooled.corpus_hash == serial.corpus_hash == corpus_hash(entries)


def test_default_corpus_is_deterministic():
    first = default_corpus(seed=7)
    second = default_corpus(seed=7)
    assert corpus_hash(first) == corpus_hash(second)
    assert [e.name for e in first][:4] == ['ray', 'cone2', 'segment-cone', 'square-cone']
    assert all(e.suites == SUITES for e in first if 'smoke' not in e.tags)


def test_default_corpus_carries_a_four_dimensional_smoke_entry():
    entries = {e.name: e for e in default_corpus(seed=7)}
    smoke = entries['cone4']
    assert smoke.subdivision.coarse.ambient_dim == 4
    assert smoke.suites == ('h',)
    report = run_verification([smoke], 'h')
    assert [c.status for c in report.checks] == [PASS]
    assert 'cone4' not in {e.name for e in default_corpus(seed=7, include_dim4=False)}
