"""Scoring: extraction P/R/F1, normalization accuracy, strict and relaxed TempRel."""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass
from typing import Iterable, Mapping, Sequence

from .core import EERelation, EventMention, Span, TemporalGraph, node_position, reverse_ee

_BEFORE_AFTER = (EERelation.BEFORE, EERelation.AFTER)


@dataclass(frozen=True)
class PRF:
    tp: int
    fp: int
    fn: int
    empty_precision: float = 0.0  # value reported when tp + fp == 0

    @property
    def precision(self) -> float:
        d = self.tp + self.fp
        return self.tp / d if d else self.empty_precision

    @property
    def recall(self) -> float:
        d = self.tp + self.fn
        return self.tp / d if d else 0.0

    @property
    def f1(self) -> float:
        p, r = self.precision, self.recall
        return 2 * p * r / (p + r) if p + r else 0.0

    @property
    def no_scored_predictions(self) -> bool:
        return self.tp + self.fp == 0

    def __add__(self, other: "PRF") -> "PRF":
        return PRF(self.tp + other.tp, self.fp + other.fp, self.fn + other.fn, self.empty_precision)

    def as_dict(self) -> dict:
        d = asdict(self)
        d.pop("empty_precision")
        d.update(precision=self.precision, recall=self.recall, f1=self.f1)
        if self.no_scored_predictions:
            d["note"] = "no scored predictions"
        return d


def _sum(items: Iterable[PRF], empty_precision: float = 0.0) -> PRF:
    total = PRF(0, 0, 0, empty_precision)
    for x in items:
        total = total + x
    return total


def score_extraction(gold: Iterable[Span], pred: Iterable[Span], mode: str = "strict") -> PRF:
    """Span P/R/F1 for one document. ``overlap`` aligns greedily by position."""
    gold = sorted(set(gold))
    pred = sorted(set(pred))
    if mode == "strict":
        tp = len(set(gold) & set(pred))
    elif mode == "overlap":
        used = [False] * len(gold)
        tp = 0
        for p in pred:
            for gi, g in enumerate(gold):
                if not used[gi] and g.overlaps(p):
                    used[gi] = True
                    tp += 1
                    break
    else:
        raise ValueError(f"unknown mode {mode!r}")
    return PRF(tp, len(pred) - tp, len(gold) - tp)


def score_extraction_corpus(pairs: Iterable[tuple[Iterable[Span], Iterable[Span]]], mode: str = "strict") -> PRF:
    return _sum(score_extraction(g, p, mode) for g, p in pairs)


def score_normalization(gold_values: Sequence, pred_values: Sequence) -> float:
    """Exact-match accuracy over aligned value lists; 0 for empty input."""
    if len(gold_values) != len(pred_values):
        raise ValueError("value lists must be aligned")
    if not gold_values:
        return 0.0
    return sum(1 for g, p in zip(gold_values, pred_values) if g == p) / len(gold_values)


def _canonical(edges: Mapping) -> dict:
    out = {}
    for (a, b), lab in edges.items():
        if isinstance(lab, EERelation) or lab in {r.value for r in EERelation}:
            lab = EERelation(lab)
            if a > b:
                a, b, lab = b, a, reverse_ee(lab)
        elif a > b:
            a, b = b, a
        out[(a, b)] = lab
    return out


def score_temprel(gold: Mapping, pred: Mapping, relaxed: bool = False, kind: str = "EE") -> PRF:
    """Edge P/R/F1 for edges keyed by node pair.

    Relaxed mode (EE only): a Before/After prediction on a gold Vague pair
    is dropped from both fp and fn; it is never a tp. With nothing left to
    score precision is reported as 1.0 and flagged ``no_scored_predictions``.
    """
    if kind == "EE":
        gold, pred = _canonical(gold), _canonical(pred)
    return _count_edges(gold, pred, relaxed and kind == "EE")


def _count_edges(gold: Mapping, pred: Mapping, relaxed: bool) -> PRF:
    tp = fp = fn = 0
    for pair, g in gold.items():
        p = pred.get(pair)
        if p is None:
            fn += 1
        elif p == g:
            tp += 1
        elif relaxed and g is EERelation.VAGUE and p in _BEFORE_AFTER:
            continue
        else:
            fp += 1
            fn += 1
    fp += sum(1 for pair in pred if pair not in gold)
    return PRF(tp, fp, fn, 1.0 if relaxed else 0.0)


def graph_edges(graph: TemporalGraph, kind: str = "EE") -> dict:
    if kind == "EE":
        return {(e.source, e.target): EERelation(e.label) for e in graph.ee_edges}
    return {(e.event, e.timex): e.label for e in graph.et_edges}


def _node_key(node):
    if isinstance(node, EventMention):
        return ("event", node.span.start, node.span.end) if node.span else ("event-token", node.token_index)
    return ("timex", node.span.start, node.span.end)


def align_system_graph(gold: TemporalGraph, pred: TemporalGraph, kind: str = "EE") -> tuple[dict, dict]:
    """Re-key both graphs' edges by strict span identity of their nodes.

    Unaligned nodes keep keys that cannot match, so their edges count as
    fp (system) or fn (gold).
    """
    def rekey(graph):
        keys = {n.id: _node_key(n) for n in graph.nodes}
        order = {n.id: node_position(n) for n in graph.nodes}
        out = {}
        for (a, b), lab in graph_edges(graph, kind).items():
            ka, kb = keys[a], keys[b]
            if kind == "EE" and (order[a], ka) > (order[b], kb):
                ka, kb, lab = kb, ka, reverse_ee(lab)
            out[(ka, kb)] = lab
        return out

    return rekey(gold), rekey(pred)


def score_temprel_system(gold: TemporalGraph, pred: TemporalGraph, relaxed: bool = False,
                         kind: str = "EE") -> PRF:
    g, p = align_system_graph(gold, pred, kind)
    return _count_edges(g, p, relaxed and kind == "EE")


@dataclass
class Report:
    rows: dict  # metric name -> PRF or float

    def to_json(self) -> str:
        data = {"schema_version": 1, "metrics": {}}
        for name, v in self.rows.items():
            data["metrics"][name] = v.as_dict() if isinstance(v, PRF) else {"accuracy": v}
        return json.dumps(data, indent=2, sort_keys=True) + "\n"

    def to_tsv(self) -> str:
        lines = ["# schema_version: 1", "metric\ttp\tfp\tfn\tprecision\trecall\tf1\taccuracy"]
        for name, v in self.rows.items():
            if isinstance(v, PRF):
                lines.append(f"{name}\t{v.tp}\t{v.fp}\t{v.fn}\t{v.precision:.4f}\t{v.recall:.4f}\t{v.f1:.4f}\t")
            else:
                lines.append(f"{name}\t\t\t\t\t\t\t{v:.4f}")
        return "\n".join(lines) + "\n"

    def to_table(self) -> str:
        width = max([len(n) for n in self.rows] + [6])
        lines = [f"{'metric':<{width}}  {'P':>6}  {'R':>6}  {'F1':>6}"]
        for name, v in self.rows.items():
            if isinstance(v, PRF):
                lines.append(f"{name:<{width}}  {v.precision:6.3f}  {v.recall:6.3f}  {v.f1:6.3f}")
            else:
                lines.append(f"{name:<{width}}  {'':>6}  {'':>6}  {v:6.3f}  (accuracy)")
        return "\n".join(lines) + "\n"
