import json

import pytest
from hypothesis import given, strategies as st

from tempus.core import (EE_LABELS, EEEdge, EERelation, EventMention, Span, TemporalGraph)
from tempus.evaluate import (PRF, Report, score_extraction, score_normalization, score_temprel,
                             score_temprel_system)

B, A, E, V = EE_LABELS


def test_identical_spans_score_one():
    spans = [Span(0, 5), Span(7, 9)]
    prf = score_extraction(spans, spans)
    assert (prf.precision, prf.recall, prf.f1) == (1.0, 1.0, 1.0)


def test_empty_prediction():
    prf = score_extraction([Span(0, 5)], [])
    assert (prf.precision, prf.recall, prf.f1) == (0.0, 0.0, 0.0)


def test_strict_versus_overlap():
    assert score_extraction([Span(0, 5)], [Span(2, 7)], "strict").f1 == 0.0
    assert score_extraction([Span(0, 5)], [Span(2, 7)], "overlap").f1 == 1.0
    with pytest.raises(ValueError):
        score_extraction([], [], "fuzzy")


def test_overlap_aligns_one_to_one():
    prf = score_extraction([Span(0, 10)], [Span(0, 3), Span(4, 8)], "overlap")
    assert (prf.tp, prf.fp, prf.fn) == (1, 1, 0)


def test_relaxed_vague_gold_before_prediction():
    gold, pred = {(0, 1): V}, {(0, 1): B}
    strict = score_temprel(gold, pred)
    assert strict.precision == 0.0
    relaxed = score_temprel(gold, pred, relaxed=True)
    assert (relaxed.tp, relaxed.fp, relaxed.fn) == (0, 0, 0)
    assert relaxed.precision == 1.0 and relaxed.no_scored_predictions
    assert relaxed.as_dict()["note"] == "no scored predictions"


def test_exact_match_both_modes():
    for relaxed in (False, True):
        prf = score_temprel({(0, 1): B}, {(0, 1): B}, relaxed=relaxed)
        assert (prf.precision, prf.recall, prf.f1) == (1.0, 1.0, 1.0)


CONSTRUCTED_GOLD = {(0, 1): B, (0, 2): B, (1, 2): E, (2, 3): A, (0, 3): B, (1, 3): V}
CONSTRUCTED_PRED = {(0, 1): B, (0, 2): B, (1, 2): E, (1, 3): B, (3, 4): A}


def test_constructed_confusion_counts():
    # (0,3) and (2,3) missing, (3,4) spurious, (1,3) is Before on a gold Vague pair
    strict = score_temprel(CONSTRUCTED_GOLD, CONSTRUCTED_PRED)
    relaxed = score_temprel(CONSTRUCTED_GOLD, CONSTRUCTED_PRED, relaxed=True)
    assert (strict.tp, strict.fp, strict.fn) == (3, 2, 3)
    assert (relaxed.tp, relaxed.fp, relaxed.fn) == (3, 1, 2)
    assert relaxed.precision == 0.75 and relaxed.recall == 0.6
    assert relaxed.f1 == pytest.approx(2 / 3)
    assert strict.precision == 0.6 and strict.recall == 0.5
    assert relaxed.f1 >= strict.f1


def test_edges_are_canonicalized_before_matching():
    assert score_temprel({(0, 1): B}, {(1, 0): A}).tp == 1
    assert score_temprel({(0, 1): "Before"}, {(1, 0): "After"}).tp == 1


pairs = st.tuples(st.integers(0, 4), st.integers(0, 4)).filter(lambda p: p[0] < p[1])
edge_sets = st.dictionaries(pairs, st.sampled_from(EE_LABELS), max_size=10)


@given(edge_sets, edge_sets)
def test_relaxed_never_below_strict(gold, pred):
    strict = score_temprel(gold, pred)
    relaxed = score_temprel(gold, pred, relaxed=True)
    assert relaxed.f1 >= strict.f1 - 1e-12
    assert relaxed.tp == strict.tp
    assert strict.tp + strict.fn == len(gold)


@given(edge_sets)
def test_perfect_prediction(gold):
    prf = score_temprel(gold, dict(gold))
    assert prf.fp == prf.fn == 0


def test_normalization_accuracy():
    assert score_normalization(["1998", "P3Y"], ["1998", None]) == 0.5
    assert score_normalization([], []) == 0.0
    with pytest.raises(ValueError):
        score_normalization(["a"], [])


def _ev(i, start):
    return EventMention(i, i, f"e{i}", span=Span(start, start + 2))


def test_system_alignment_uses_spans_not_ids():
    gold = TemporalGraph((_ev(0, 0), _ev(1, 10)), (EEEdge(0, 1, B),))
    pred = TemporalGraph((_ev(7, 10), _ev(3, 0)), (EEEdge(7, 3, A),))
    assert score_temprel_system(gold, pred).tp == 1
    shifted = TemporalGraph((_ev(0, 1), _ev(1, 10)), (EEEdge(0, 1, B),))
    prf = score_temprel_system(gold, shifted)
    assert (prf.tp, prf.fp, prf.fn) == (0, 1, 1)


def test_report_renderings():
    report = Report({"timex_extraction": PRF(3, 1, 2), "timex_normalization": 0.5})
    tsv = report.to_tsv().splitlines()
    assert tsv[0] == "# schema_version: 1"
    assert tsv[2] == "timex_extraction\t3\t1\t2\t0.7500\t0.6000\t0.6667\t"
    data = json.loads(report.to_json())
    assert data["schema_version"] == 1
    assert data["metrics"]["timex_normalization"] == {"accuracy": 0.5}
    assert "0.750" in report.to_table()


def test_prf_addition():
    total = PRF(1, 2, 3) + PRF(4, 5, 6)
    assert (total.tp, total.fp, total.fn) == (5, 7, 9)
