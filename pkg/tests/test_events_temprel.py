import pytest

from conftest import CAR_BOMB, KUCHMA
from tempus.core import (EE_LABELS, EERelation, ETRelation, EventMention, LabelDistribution, Span, TimexMention,
                         TimexType, assign_ids)
from tempus.corpus import generate_corpus, record_to_gold
from tempus.events import NotAVerb, event_feature_names, extract_events, verb_indices
from tempus.ilp import check_consistency
from tempus.perceptron import PerceptronTrainer, SparseModel, feature_id
from tempus.pipeline import _temprob_from
from tempus.preprocess import preprocess
from tempus.temprel import (ScoredEdge, TempRelModels, annotate_temprel, ee_feature_names, et_feature_names,
                            generate_candidates, global_labels, sentence_aspect, train_temprel)
from tempus.temprob import TemProbTable, build_temprob, decile_bucket, prior_features

B, A, E, V = EE_LABELS


def _event(doc, surface, eid=0):
    i = [t.surface for t in doc.tokens].index(surface)
    tok = doc.tokens[i]
    return EventMention(eid, i, tok.lemma, tok.surface, tok.span)


@pytest.fixture(scope="module")
def car():
    return preprocess(CAR_BOMB, "2018-05-15", "car")


def test_event_features_of_example_two(car):
    exploded = event_feature_names(car, _event(car, "exploded").token_index)
    assert "lemma=explode" in exploded
    assert any(f.startswith("p[-1]=") for f in exploded) and any(f.startswith("p[1]=") for f in exploded)
    died = event_feature_names(car, _event(car, "died").token_index)
    assert "aux=have" in died
    said = event_feature_names(car, _event(car, "said").token_index)
    assert "l[2]=</S>" in said and "sent_final" in said


def test_event_features_reject_non_verbs(car):
    with pytest.raises(NotAVerb):
        event_feature_names(car, 1)


def test_extract_events_on_example_two(car, models):
    surfaces = {e.surface for e in extract_events(car, models.events)}
    assert {"exploded", "died"} <= surfaces


def test_no_verbs_no_events(models):
    doc = preprocess("The big red car.", "2018-05-15")
    assert verb_indices(doc) == []
    assert extract_events(doc, models.events) == []


def test_event_rate_over_verbs_in_band(models, mini_corpus):
    verbs = events = 0
    for rec in mini_corpus:
        doc = preprocess(rec.text, rec.dct)
        verbs += len(verb_indices(doc))
        events += len(extract_events(doc, models.events))
    assert 0.40 <= events / verbs <= 0.90


def test_temprob_counts():
    table = build_temprob([("explode", "die", EERelation.BEFORE)])
    assert table.lookup("explode", "die") == (1, 0)
    assert table.lookup("die", "explode") == (0, 1)
    empty = build_temprob([])
    assert len(empty) == 0 and empty.lookup("a", "b") == (0, 0)
    assert empty.p_before("a", "b") is None


def test_temprob_ignores_vague_and_roundtrips():
    table = build_temprob([("a", "b", EERelation.VAGUE), ("b", "a", EERelation.BEFORE)])
    assert table.lookup("a", "b") == (0, 1)
    assert TemProbTable.loads(table.dumps()).counts == table.counts
    with pytest.raises(ValueError):
        TemProbTable.loads("b\ta\t1\t0\n")


def test_prior_feature_buckets():
    assert prior_features(TemProbTable({("a", "b"): (1, 0)}), "a", "b")[0] == "temprob_p_before=[0.9,1.0]"
    assert prior_features(TemProbTable(), "a", "b") == ["temprob=UNSEEN_PAIR"]
    assert prior_features(TemProbTable({("a", "b"): (5, 5)}), "a", "b")[0] == "temprob_p_before=[0.5,0.6)"
    assert [decile_bucket(p) for p in (0.0, 0.95, 1.0)] == ["[0.0,0.1)", "[0.9,1.0]", "[0.9,1.0]"]


def test_candidates_for_example_two(car):
    events = [_event(car, "exploded", 0), _event(car, "died", 1)]
    cands = generate_candidates(car, events, [])
    assert [(c.kind, c.pair) for c in cands] == [("EE", (0, 1))]


def test_candidates_within_a_sentence():
    doc = preprocess("He came, saw and conquered.", "2018-05-15")
    events = [_event(doc, w, k) for k, w in enumerate(("came", "saw", "conquered"))]
    assert len(generate_candidates(doc, events, [])) == 3


def test_distance_filter_drops_far_timex():
    doc = preprocess("He left. It rained. It snowed. It was 1998.", "2018-05-15")
    ev = _event(doc, "left", 0)
    t = doc.tokens[-2]
    tx = TimexMention(1, t.span, TimexType.DATE, "1998", "1998")
    assert generate_candidates(doc, [ev], [tx], max_sent_dist=1) == []
    assert len(generate_candidates(doc, [ev], [tx], max_sent_dist=3)) == 1


def test_pair_features(car):
    e1, e2 = _event(car, "exploded", 0), _event(car, "died", 1)
    names = ee_feature_names(car, e1, e2, TemProbTable({("die", "explode"): (0, 1)}))
    assert not any("_between=" in f and not f.endswith("=NONE") for f in names)
    assert "temprob_p_before=[0.9,1.0]" in names
    assert "sd1_aspect=present_perfect" in names
    doc = preprocess("He came before she left.", "2018-05-15")
    same = ee_feature_names(doc, _event(doc, "came", 0), _event(doc, "left", 1))
    assert "sent_dist=0" in same and "sd0_between=before" in same


def test_et_features():
    doc = preprocess(KUCHMA, "1998-02-27")
    ev = _event(doc, "signed", 0)
    span = Span(doc.text.index("February"), doc.text.index("1998") + 4)
    names = et_feature_names(doc, ev, TimexMention(1, span, TimexType.DATE, "1998-02-27"))
    assert "t_head=1998" in names and "order=event_first" in names


def test_sentence_aspect():
    doc = preprocess("He had left. They have gone. She said \"I have seen\" it.", "2018-05-15")
    assert [sentence_aspect(doc, s) for s in range(3)] == ["past_perfect", "present_perfect", "simple"]


def test_consistent_local_argmax_needs_no_repair():
    d = LabelDistribution({B: 0.7, A: 0.1, E: 0.1, V: 0.1}, EE_LABELS)
    scored = [ScoredEdge("EE", (0, 1), d), ScoredEdge("EE", (1, 2), d), ScoredEdge("EE", (0, 2), d)]
    assert set(global_labels(scored).values()) == {B}
    trainer = PerceptronTrainer(EE_LABELS)
    trainer.begin_example()
    trainer.update({feature_id("x"): 1.0}, B, B)
    assert trainer.updates == 0


def test_inference_feedback_reduces_repairs():
    gold = [record_to_gold(r) for r in generate_corpus(15, seed=11)]
    assert all(check_consistency(g.graph) == [] for g in gold)
    stats = {}
    train_temprel([(g.doc, g.graph) for g in gold], _temprob_from(gold), epochs=5, seed=0,
                  use_inference_feedback=True, stats=stats)
    assert stats["repairs"][-1] < stats["repairs"][0]


def test_training_without_feedback_matches_plain_perceptron(mini_corpus):
    from tempus.perceptron import dumps, train
    from tempus.temprel import _candidate_features, _canonical_gold
    gold = [record_to_gold(r) for r in mini_corpus[:10]]
    models = train_temprel([(g.doc, g.graph) for g in gold], None, epochs=3, seed=2)
    examples = []
    for g in gold:
        canon = _canonical_gold(g.graph)
        nodes = {n.id: n for n in g.graph.nodes}
        for c in generate_candidates(g.doc, g.graph.events, g.graph.timexes):
            if c.kind == "EE" and ("EE", c.pair) in canon:
                examples.append((_candidate_features(g.doc, c, nodes, None), canon[("EE", c.pair)]))
    assert dumps(models.ee) == dumps(train(examples, EE_LABELS, 3, 2))


def test_annotated_graph_is_consistent(car, models):
    events = extract_events(car, models.events)
    events, timexes, _ = assign_ids(events, [])
    graph = annotate_temprel(car, events, timexes, models.temprel, models.temprob)
    assert check_consistency(graph) == []
    labels = {(graph.node(e.source).surface, graph.node(e.target).surface): e.label for e in graph.ee_edges}
    assert labels[("exploded", "died")] is B


def test_untrained_models_give_uniform_distributions(car):
    empty = SparseModel(EE_LABELS), SparseModel((ETRelation.EQUAL, ETRelation.NOT_EQUAL))
    events = [_event(car, "exploded", 0), _event(car, "died", 1)]
    graph = annotate_temprel(car, events, [], TempRelModels(*empty))
    assert graph.ee_edges[0].label is B
    assert graph.ee_edges[0].distribution[V] == pytest.approx(0.25)
