import json

import pytest
from hypothesis import given, settings, strategies as st

from tempus.core import EE_LABELS
from tempus.corpus import (CorpusFormatError, DocumentRecord, dumps_conll, dumps_jsonl, event_tags,
                           generate_corpus, generate_text, graph_to_gold_dict, is_gold_event, iter_jsonl,
                           load_jsonl, loads_conll, record_to_gold, save_jsonl, validate_record)
from tempus.ilp import check_consistency
from tempus.preprocess import preprocess
from tempus.timex.normalize import normalize


def test_generator_is_deterministic():
    assert dumps_jsonl(generate_corpus(5, seed=3)) == dumps_jsonl(generate_corpus(5, seed=3))
    assert dumps_jsonl(generate_corpus(5, seed=3)) != dumps_jsonl(generate_corpus(5, seed=4))


@settings(max_examples=15, deadline=None)
@given(st.integers(0, 10_000))
def test_generated_gold_is_consistent_and_well_formed(seed):
    for rec in generate_corpus(3, seed=seed):
        validate_record(json.loads(rec.to_json()))
        gold = record_to_gold(rec)
        assert check_consistency(gold.graph) == []
        for t in gold.graph.timexes:
            assert normalize(t.text, None, gold.doc.dct)[1] == t.value
        assert sorted(gold.event_indices) == [i for i in range(len(gold.doc.tokens))
                                              if is_gold_event(gold.doc, i)]


def test_generated_labels_cover_the_ee_label_set():
    labels = {e["label"] for rec in generate_corpus(60, seed=0) for e in rec.gold["ee_edges"]}
    assert labels == {l.value for l in EE_LABELS}


def test_generate_text_reaches_token_budget():
    texts = generate_text(500, seed=1)
    assert sum(len(preprocess(t).tokens) for t in texts) >= 500


def test_jsonl_roundtrip(tmp_path):
    recs = generate_corpus(3, seed=1)
    path = tmp_path / "c.jsonl"
    save_jsonl(recs, path)
    again = load_jsonl(path)
    assert [r.to_json() for r in again] == [r.to_json() for r in recs]


def test_gold_dict_roundtrip():
    rec = generate_corpus(1, seed=5)[0]
    gold = record_to_gold(rec)
    back = record_to_gold(DocumentRecord(rec.id, rec.text, rec.dct, graph_to_gold_dict(gold.graph)))
    assert back.graph == gold.graph


@pytest.mark.parametrize("record, message", [
    ([], "JSON object"),
    ({"id": 1, "text": ""}, "'id'"),
    ({"id": "a", "text": "x", "dct": "soon"}, "ISO date"),
    ({"id": "a", "text": "abc", "gold": {"timexes": [{"span": [0, 9], "type": "Date"}]}}, "outside text"),
    ({"id": "a", "text": "abc", "gold": {"timexes": [{"span": [0, 1], "type": "Era"}]}}, "type 'Era'"),
    ({"id": "a", "text": "a b", "gold": {"events": [{"token_index": 0}],
                                         "ee_edges": [{"e1": 0, "e2": 0, "label": "Before"}]}}, "self loop"),
    ({"id": "a", "text": "a b", "gold": {"events": [{"token_index": 0}, {"token_index": 1}],
                                         "ee_edges": [{"e1": 0, "e2": 1, "label": "During"}]}}, "During"),
])
def test_validation_errors(record, message):
    with pytest.raises(CorpusFormatError, match=message):
        validate_record(record)


def test_bad_json_reports_line(tmp_path):
    path = tmp_path / "bad.jsonl"
    path.write_text('{"id": "a", "text": ""}\n\n{oops\n', encoding="utf-8")
    with pytest.raises(CorpusFormatError) as info:
        list(iter_jsonl(path))
    assert info.value.line == 3


def test_conll_roundtrip():
    doc = preprocess("A car exploded. People died.", "2018-05-15", "d1")
    tags = event_tags(doc, [2, 5])
    parsed = loads_conll(dumps_conll(doc, tags))
    assert parsed[0][0] == "d1"
    rows = [r for sent in parsed[0][1] for r in sent]
    assert [r[2] for r in rows] == tags
    assert len(parsed[0][1]) == 2
    with pytest.raises(CorpusFormatError):
        loads_conll("only two\tcolumns\n")


def test_is_gold_event_rule():
    doc = preprocess('He decided to leave, saying "we lost".', "2018-05-15")
    marked = {doc.tokens[i].surface for i in range(len(doc.tokens)) if is_gold_event(doc, i)}
    assert marked == {"decided"}
