"""Temporal relation classification: candidate pairs, local scoring, global inference.

Node ids must be unique across events and timexes (see
:func:`tempus.core.assign_ids`). EE candidates are oriented from the
earlier to the later event in the text; ET candidates are always
``(event, timex)`` because the ET label set carries no direction.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Mapping, NamedTuple, Sequence

from .core import (EE_LABELS, ET_LABELS, Document, EEEdge, EERelation, ETEdge, ETRelation,
                   EventMention, LabelDistribution, TemporalGraph, TempusError, TimexMention,
                   node_position, reverse_ee)
from .ilp import STANDARD_TABLE, CompositionTable, InfeasibleError, build_problem, solve
from .perceptron import PerceptronTrainer, SparseModel, distribution, featurize, softmax, train
from .temprob import TemProbTable, prior_features

CONNECTIVES = frozenset("before after when then since until while as later earlier meanwhile".split())
CLAUSE_BREAKS = frozenset([",", ";", ":"])
DEFAULT_MAX_SENT_DIST = 1


class EdgeCandidate(NamedTuple):
    kind: str  # "EE" or "ET"
    pair: tuple


class ScoredEdge(NamedTuple):
    kind: str
    pair: tuple
    distribution: LabelDistribution


class TempRelModels(NamedTuple):
    ee: SparseModel
    et: SparseModel


@dataclass(frozen=True)
class _Anchor:
    first: int  # first token index
    last: int   # last token index (inclusive)
    head: int
    sent: int


def _anchor(doc: Document, node) -> _Anchor:
    if isinstance(node, EventMention):
        i = node.token_index
        return _Anchor(i, i, i, doc.tokens[i].sentence_index)
    i, j = doc.token_range(node.span)
    return _Anchor(i, j - 1, j - 1, doc.tokens[i].sentence_index)


def _order_key(node):
    return (node_position(node), 0 if isinstance(node, EventMention) else 1)


def generate_candidates(doc: Document, events: Sequence[EventMention], timexes: Sequence[TimexMention],
                        max_sent_dist: int = DEFAULT_MAX_SENT_DIST) -> list[EdgeCandidate]:
    """All EE and ET pairs at most ``max_sent_dist`` sentences apart."""
    evs = sorted(events, key=_order_key)
    sent = {e.id: _anchor(doc, e).sent for e in evs}
    tsent = {t.id: _anchor(doc, t).sent for t in timexes}
    out = []
    for i, a in enumerate(evs):
        for b in evs[i + 1:]:
            if abs(sent[a.id] - sent[b.id]) <= max_sent_dist:
                out.append(EdgeCandidate("EE", (a.id, b.id)))
    for e in evs:
        for t in sorted(timexes, key=_order_key):
            if abs(sent[e.id] - tsent[t.id]) <= max_sent_dist:
                out.append(EdgeCandidate("ET", (e.id, t.id)))
    return out


def _distance_bucket(d: int) -> str:
    if d <= 2:
        return str(d)
    if d <= 5:
        return "3-5"
    if d <= 10:
        return "6-10"
    return "11+"


def _window(doc: Document, anchor: _Anchor, role: str) -> list[str]:
    a, b = doc.sentences[anchor.sent]
    feats = []
    for k in (-2, -1, 1, 2):
        j = (anchor.first + k) if k < 0 else (anchor.last + k)
        pos = "<S>" if j < a else "</S>" if j >= b else doc.tokens[j].pos
        feats.append(f"{role}_p[{k}]={pos}")
    feats.append(f"{role}_sent={min(anchor.sent, 5)}")
    return feats


def _pair_features(doc: Document, x: _Anchor, y: _Anchor) -> list[str]:
    """Features shared by EE and ET pairs; ``x`` and ``y`` in text order."""
    if (y.first, y.last) < (x.first, x.last):
        x, y = y, x
    sd = y.sent - x.sent
    feats = [f"sent_dist={sd}", f"tok_dist={_distance_bucket(y.head - x.head)}"]
    between = [t.surface.lower() for t in doc.tokens[x.last + 1:y.first]]
    hits = sorted({w for w in between if w in CONNECTIVES})
    for w in hits:
        feats.append(f"sd{sd}_between={w}")
    if not hits:
        feats.append(f"sd{sd}_between=NONE")
    sa, _ = doc.sentences[x.sent]
    first = doc.tokens[sa].surface.lower()
    if sd == 0 and sa < x.first and first in CONNECTIVES:
        feats.append(f"sd0_initial={first}")
    if sd >= 1:
        sb, _ = doc.sentences[y.sent]
        opener = doc.tokens[sb].surface.lower()
        opener = opener if opener in CONNECTIVES else "NONE"
        aspect = sentence_aspect(doc, y.sent)
        feats.append(f"sd{sd}_opener={opener}")
        feats.append(f"sd{sd}_aspect={aspect}")
        feats.append(f"sd{sd}_opener|aspect={opener}|{aspect}")
    return feats


def sentence_aspect(doc: Document, sent: int) -> str:
    """Aspect of the first verb outside quotation marks in a sentence."""
    start, end = doc.sentences[sent]
    quoted = False
    for i in range(start, end):
        tok = doc.tokens[i]
        if tok.surface == '"':
            quoted = not quoted
        elif not quoted and tok.pos == "VERB":
            if tok.lemma == "have" and i + 1 < end and doc.tokens[i + 1].pos == "VERB":
                return "past_perfect" if tok.surface.lower() == "had" else "present_perfect"
            return "simple"
    return "simple"


def ee_feature_names(doc: Document, e1: EventMention, e2: EventMention,
                     temprob: TemProbTable | None = None) -> list[str]:
    a1, a2 = _anchor(doc, e1), _anchor(doc, e2)
    feats = ["bias", f"e1_lemma={e1.lemma}", f"e2_lemma={e2.lemma}",
             f"lemmas={e1.lemma}|{e2.lemma}"]
    feats += _window(doc, a1, "e1") + _window(doc, a2, "e2")
    feats.append("order=" + ("fwd" if a1.head <= a2.head else "rev"))
    feats += _pair_features(doc, a1, a2)
    if temprob is not None:
        feats += prior_features(temprob, e1.lemma, e2.lemma)
    return feats


def _same_clause(doc: Document, x: _Anchor, y: _Anchor) -> bool:
    if x.sent != y.sent:
        return False
    if y.first < x.first:
        x, y = y, x
    for tok in doc.tokens[x.last + 1:y.first]:
        if tok.surface in CLAUSE_BREAKS or tok.surface.lower() in CONNECTIVES:
            return False
    return True


def et_feature_names(doc: Document, e: EventMention, t: TimexMention) -> list[str]:
    ae, at = _anchor(doc, e), _anchor(doc, t)
    head = doc.tokens[at.head].surface.lower()
    feats = ["bias", f"e_lemma={e.lemma}", f"t_head={head}", f"lemmas={e.lemma}|{head}",
             f"t_type={getattr(t.ttype, 'value', t.ttype)}"]
    feats += _window(doc, ae, "e") + _window(doc, at, "t")
    feats.append("order=" + ("event_first" if ae.head < at.first else "timex_first"))
    feats += _pair_features(doc, ae, at)
    same = _same_clause(doc, ae, at)
    feats.append(f"same_clause={same}")
    feats.append(f"same_clause|type={same}|{getattr(t.ttype, 'value', t.ttype)}")
    return feats


def ee_features(doc, e1, e2, temprob=None) -> dict:
    return featurize(ee_feature_names(doc, e1, e2, temprob))


def et_features(doc, e, t) -> dict:
    return featurize(et_feature_names(doc, e, t))


def _candidate_features(doc: Document, cand: EdgeCandidate, nodes: Mapping, temprob) -> dict:
    a, b = nodes[cand.pair[0]], nodes[cand.pair[1]]
    if cand.kind == "EE":
        return ee_features(doc, a, b, temprob)
    return et_features(doc, a, b)


def classify_local(doc: Document, candidates: Sequence[EdgeCandidate], nodes: Mapping,
                   models: TempRelModels, temprob: TemProbTable | None = None) -> list[ScoredEdge]:
    """Softmax distribution for every candidate; ``nodes`` maps id to mention."""
    out = []
    for cand in candidates:
        fv = _candidate_features(doc, cand, nodes, temprob)
        model = models.ee if cand.kind == "EE" else models.et
        out.append(ScoredEdge(cand.kind, cand.pair, distribution(model, fv)))
    return out


def _canonical_gold(graph: TemporalGraph) -> dict:
    """``(kind, pair) -> label`` with EE pairs oriented earlier -> later."""
    gold = {}
    for e in graph.ee_edges:
        a, b = graph.node(e.source), graph.node(e.target)
        if _order_key(a) <= _order_key(b):
            gold[("EE", (e.source, e.target))] = EERelation(e.label)
        else:
            gold[("EE", (e.target, e.source))] = reverse_ee(e.label)
    for e in graph.et_edges:
        gold[("ET", (e.event, e.timex))] = ETRelation(e.label)
    return gold


def _empty_model(labels) -> SparseModel:
    return SparseModel(tuple(labels), {l: {} for l in labels}, {l: {} for l in labels}, 0, 0, 0)


def global_labels(scored: Sequence[ScoredEdge], table: CompositionTable = STANDARD_TABLE,
                  coupling: bool = True) -> dict:
    """ILP assignment keyed by ``(kind, pair)``."""
    if not scored:
        return {}
    problem = build_problem(scored, table, coupling)
    try:
        solution = solve(problem)
    except InfeasibleError as exc:  # all-Vague/NotEqual is always feasible
        raise TempusError(f"internal error: ILP infeasible ({exc})") from exc
    return {(e.kind, e.pair): lab for e, lab in zip(problem.edges, solution.labels)}


def train_temprel(corpus: Sequence[tuple[Document, TemporalGraph]], temprob: TemProbTable | None = None,
                  epochs: int = 10, seed: int = 0, use_inference_feedback: bool = False,
                  max_sent_dist: int = DEFAULT_MAX_SENT_DIST, coupling: bool = True,
                  stats: dict | None = None) -> TempRelModels:
    """Train the EE and ET classifiers from gold graphs.

    With ``use_inference_feedback`` every document is globally decoded with
    the current weights each epoch and updates use the inferred labels.
    ``stats["repairs"]`` then lists, per epoch, how many edges the ILP
    changed relative to the local argmax.
    """
    prepared = []
    for doc, graph in corpus:
        gold = _canonical_gold(graph)
        nodes = {n.id: n for n in graph.nodes}
        cands = generate_candidates(doc, graph.events, graph.timexes, max_sent_dist)
        items = [(c, _candidate_features(doc, c, nodes, temprob), gold.get((c.kind, c.pair)))
                 for c in cands]
        prepared.append(items)
    n_gold = sum(1 for items in prepared for _, _, g in items if g is not None)
    if n_gold == 0:
        raise ValueError("training corpus has no gold edges among the candidate pairs")

    if not use_inference_feedback:
        models = []
        for kind, labels in (("EE", EE_LABELS), ("ET", ET_LABELS)):
            examples = [(fv, g) for items in prepared for c, fv, g in items
                        if c.kind == kind and g is not None]
            models.append(train(examples, labels, epochs, seed) if examples else _empty_model(labels))
        return TempRelModels(*models)

    trainers = {"EE": PerceptronTrainer(EE_LABELS), "ET": PerceptronTrainer(ET_LABELS)}
    rng = random.Random(seed)
    order = list(range(len(prepared)))
    repairs = []
    for _ in range(epochs):
        rng.shuffle(order)
        changed = 0
        for di in order:
            items = prepared[di]
            if not items:
                continue
            for tr in trainers.values():
                tr.begin_example()
            scored = []
            for c, fv, _ in items:
                tr = trainers[c.kind]
                scored.append(ScoredEdge(c.kind, c.pair, softmax(tr.raw_scores(fv), tr.labels)))
            inferred = global_labels(scored, coupling=coupling)
            for (c, fv, g), s in zip(items, scored):
                pred = inferred[(c.kind, c.pair)]
                if pred != s.distribution.argmax():
                    changed += 1
                if g is not None:
                    trainers[c.kind].update(fv, g, pred)
        repairs.append(changed)
    if stats is not None:
        stats["repairs"] = repairs
    n = {k: sum(1 for items in prepared for c, _, g in items if c.kind == k and g is not None)
         for k in trainers}
    return TempRelModels(trainers["EE"].to_model(epochs, seed, n["EE"]),
                         trainers["ET"].to_model(epochs, seed, n["ET"]))


def annotate_temprel(doc: Document, events: Sequence[EventMention], timexes: Sequence[TimexMention],
                     models: TempRelModels, temprob: TemProbTable | None = None,
                     max_sent_dist: int = DEFAULT_MAX_SENT_DIST, table: CompositionTable = STANDARD_TABLE,
                     coupling: bool = True) -> TemporalGraph:
    """Globally consistent graph: ILP labels, local softmax distributions."""
    nodes = {n.id: n for n in list(events) + list(timexes)}
    if len(nodes) != len(events) + len(timexes):
        raise ValueError("event and timex ids must be distinct")
    cands = generate_candidates(doc, events, timexes, max_sent_dist)
    scored = classify_local(doc, cands, nodes, models, temprob)
    labels = global_labels(scored, table, coupling)
    ee, et = [], []
    for s in scored:
        lab = labels[(s.kind, s.pair)]
        if s.kind == "EE":
            ee.append(EEEdge(s.pair[0], s.pair[1], lab, s.distribution))
        else:
            et.append(ETEdge(s.pair[0], s.pair[1], lab, s.distribution))
    ordered = tuple(sorted(nodes.values(), key=_order_key))
    return TemporalGraph(ordered, tuple(ee), tuple(et))
