import pytest
from hypothesis import given, strategies as st

from tempus.core import (DCT, EE_LABELS, ET_LABELS, EERelation, EventMention, LabelDistribution, Span,
                         TemporalGraph, TimexMention, TimexType, assign_ids, parse_label, reverse_ee)


@pytest.mark.parametrize("label, expected", [
    (EERelation.BEFORE, EERelation.AFTER),
    (EERelation.AFTER, EERelation.BEFORE),
    (EERelation.EQUAL, EERelation.EQUAL),
    (EERelation.VAGUE, EERelation.VAGUE),
])
def test_reverse_ee(label, expected):
    assert reverse_ee(label) is expected


@given(st.sampled_from(EE_LABELS))
def test_reverse_is_an_involution(label):
    assert reverse_ee(reverse_ee(label)) is label


def test_parse_label_is_case_insensitive():
    assert parse_label("before") is EERelation.BEFORE
    assert parse_label("not_equal").value == "NotEqual"
    with pytest.raises(ValueError):
        parse_label("during")


def test_dct_parse_roundtrip():
    assert DCT.parse("2018-05-15").isoformat() == "2018-05-15"
    with pytest.raises(ValueError):
        DCT.parse("15/05/2018")


def test_distribution_must_sum_to_one():
    with pytest.raises(ValueError):
        LabelDistribution({"a": 0.5, "b": 0.6}, ["a", "b"])
    with pytest.raises(ValueError):
        LabelDistribution({"a": 1.0}, ["a", "b"])


def test_distribution_argmax_ties_go_to_first_label():
    d = LabelDistribution.uniform(EE_LABELS)
    assert d.argmax() is EERelation.BEFORE
    assert list(d) == list(EE_LABELS)


@given(st.lists(st.floats(0.01, 1.0), min_size=4, max_size=4))
def test_reversed_distribution_swaps_before_and_after(weights):
    total = sum(weights)
    d = LabelDistribution({l: w / total for l, w in zip(EE_LABELS, weights)}, EE_LABELS)
    r = d.reversed_ee()
    assert r[EERelation.BEFORE] == d[EERelation.AFTER]
    assert r[EERelation.EQUAL] == d[EERelation.EQUAL]
    assert r.reversed_ee() == d


def test_span_overlap():
    assert Span(0, 5).overlaps(Span(2, 7))
    assert not Span(0, 5).overlaps(Span(5, 7))


def test_assign_ids_follows_document_order():
    events = [EventMention(0, 3, "die", "died", Span(20, 24)), EventMention(1, 0, "explode", "exploded", Span(0, 8))]
    timexes = [TimexMention(0, Span(10, 15), TimexType.DATE, "1998")]
    ev, tx, _ = assign_ids(events, timexes)
    ids = {n.surface if isinstance(n, EventMention) else n.value: n.id for n in ev + tx}
    assert ids == {"exploded": 0, "1998": 1, "died": 2}


def test_graph_ee_label_reads_either_direction():
    from tempus.core import EEEdge
    nodes = (EventMention(0, 0, "a"), EventMention(1, 1, "b"))
    g = TemporalGraph(nodes, (EEEdge(0, 1, EERelation.BEFORE),))
    assert g.ee_label(0, 1) is EERelation.BEFORE
    assert g.ee_label(1, 0) is EERelation.AFTER
    assert g.ee_label(0, 0) is None
    assert len(ET_LABELS) == 2
