"""End-to-end annotation: preprocess, Timex, events, TempRel, timeline."""

from __future__ import annotations

import os
from dataclasses import dataclass
from pathlib import Path
from typing import Mapping, Sequence

from . import perceptron
from .core import DCT, EE_LABELS, ET_LABELS, Document, EventMention, TemporalGraph, TempusError, assign_ids
from .corpus import DocumentRecord, GoldDocument, record_to_gold
from .evaluate import (Report, graph_edges, score_extraction_corpus, score_normalization, score_temprel,
                       score_temprel_system)
from .events import EVENT_LABELS, extract_events, train_events
from .perceptron import ModelFormatError, SparseModel
from .preprocess import preprocess
from .temprel import DEFAULT_MAX_SENT_DIST, TempRelModels, annotate_temprel, train_temprel
from .temprob import TemProbTable, build_temprob
from .timeline import Timeline, build_timeline
from .timex import annotate_timex, annotate_timex_rules, train_chunker
from .timex.chunker import BIO_LABELS
from .timex.normalize import NoRuleMatched, normalize

MODEL_ENV = "TEMPUS_MODEL_DIR"
MODEL_FILES = {
    "chunker": "chunker.model",
    "events": "events.model",
    "ee": "temprel_ee.model",
    "et": "temprel_et.model",
    "temprob": "temprob.tsv",
}
BUNDLED_MODEL_DIR = Path(__file__).parent / "data" / "models"


class MissingDCTError(TempusError):
    pass


class ModelLoadError(TempusError):
    pass


@dataclass(frozen=True)
class Models:
    chunker: SparseModel
    events: SparseModel
    temprel: TempRelModels
    temprob: TemProbTable

    @classmethod
    def load(cls, directory) -> "Models":
        directory = Path(directory)

        def model(name, labels):
            path = directory / MODEL_FILES[name]
            try:
                m = perceptron.load(path, _label_type(labels))
            except (OSError, ValueError, ModelFormatError) as exc:
                raise ModelLoadError(f"cannot read model {path}: {exc}") from exc
            if tuple(m.labels) != tuple(labels):
                raise ModelLoadError(f"model {path} has labels {m.labels}, expected {tuple(labels)}")
            return m

        chunker = model("chunker", BIO_LABELS)
        events = model("events", EVENT_LABELS)
        ee = model("ee", EE_LABELS)
        et = model("et", ET_LABELS)
        path = directory / MODEL_FILES["temprob"]
        try:
            temprob = TemProbTable.load(path)
        except (OSError, ValueError) as exc:
            raise ModelLoadError(f"cannot read {path}: {exc}") from exc
        return cls(chunker, events, TempRelModels(ee, et), temprob)

    def save(self, directory) -> None:
        directory = Path(directory)
        directory.mkdir(parents=True, exist_ok=True)
        perceptron.save(self.chunker, directory / MODEL_FILES["chunker"])
        perceptron.save(self.events, directory / MODEL_FILES["events"])
        perceptron.save(self.temprel.ee, directory / MODEL_FILES["ee"])
        perceptron.save(self.temprel.et, directory / MODEL_FILES["et"])
        self.temprob.save(directory / MODEL_FILES["temprob"])


def _label_type(labels):
    """Enum class for enum labels, ``None`` for plain strings."""
    first = labels[0]
    return None if type(first) is str else type(first)


def resolve_model_dir(flag: str | os.PathLike | None = None) -> Path:
    """``--models`` flag, then ``$TEMPUS_MODEL_DIR``, then the bundled models."""
    if flag:
        return Path(flag)
    env = os.environ.get(MODEL_ENV)
    if env:
        return Path(env)
    return BUNDLED_MODEL_DIR


_BUNDLED = None


def bundled_models() -> Models:
    global _BUNDLED
    if _BUNDLED is None:
        _BUNDLED = Models.load(BUNDLED_MODEL_DIR)
    return _BUNDLED


@dataclass(frozen=True)
class Annotation:
    doc: Document
    timexes: tuple
    events: tuple
    graph: TemporalGraph
    timeline: Timeline


def annotate_document(doc: Document, models: Models | None, rules_only: bool = False,
                      max_sent_dist: int = DEFAULT_MAX_SENT_DIST, coupling: bool = True,
                      stats: dict | None = None) -> Annotation:
    if doc.dct is None:
        raise MissingDCTError(f"document {doc.id or '<unnamed>'} has no DCT; pass one explicitly")
    if rules_only:
        timexes = annotate_timex_rules(doc)
        events: list[EventMention] = []
    else:
        if models is None:
            raise ValueError("models are required unless rules_only is set")
        timexes = annotate_timex(doc, models.chunker, stats=stats)
        events = extract_events(doc, models.events)
    events, timexes, _ = assign_ids(events, timexes)
    if events and models is not None:
        graph = annotate_temprel(doc, events, timexes, models.temprel, models.temprob,
                                 max_sent_dist=max_sent_dist, coupling=coupling)
    else:
        nodes = sorted(list(events) + list(timexes), key=lambda n: n.id)
        graph = TemporalGraph(tuple(nodes))
    return Annotation(doc, tuple(timexes), tuple(events), graph, build_timeline(graph, doc))


def annotate_text(text: str, dct: DCT | str | None, models: Models | None = None, doc_id: str = "",
                  **kwargs) -> Annotation:
    if dct is None:
        raise MissingDCTError("a document creation time is required")
    doc = preprocess(text, dct, doc_id)
    return annotate_document(doc, models, **kwargs)


def _temprob_from(gold: Sequence[GoldDocument]) -> TemProbTable:
    def edges():
        for g in gold:
            for e in g.graph.ee_edges:
                yield g.graph.node(e.source).lemma, g.graph.node(e.target).lemma, e.label
    return build_temprob(edges())


def train_models(records: Sequence[DocumentRecord], epochs: int = 10, seed: int = 0,
                 inference_feedback: bool = False, max_sent_dist: int = DEFAULT_MAX_SENT_DIST,
                 tasks: Sequence[str] = ("chunker", "events", "temprel"),
                 base: Models | None = None) -> Models:
    """Train the requested components; the rest are taken from ``base``."""
    gold = [record_to_gold(r) for r in records]
    chunker = base.chunker if base else None
    events = base.events if base else None
    temprel = base.temprel if base else None
    temprob = base.temprob if base else TemProbTable()
    if "chunker" in tasks:
        chunker = train_chunker([(g.doc, g.timex_spans) for g in gold], epochs, seed)
    if "events" in tasks:
        events = train_events([(g.doc, g.event_indices) for g in gold], epochs, seed)
    if "temprel" in tasks:
        temprob = _temprob_from(gold)
        temprel = train_temprel([(g.doc, g.graph) for g in gold], temprob, epochs, seed,
                                use_inference_feedback=inference_feedback, max_sent_dist=max_sent_dist)
    missing = [n for n, m in (("chunker", chunker), ("events", events), ("temprel", temprel)) if m is None]
    if missing:
        raise ValueError(f"no base models supplied for untrained components: {missing}")
    return Models(chunker, events, temprel, temprob)


def _normalized_value(text: str, dct) -> str | None:
    try:
        return normalize(text, None, dct)[1]
    except NoRuleMatched:
        return None


def evaluate_corpus(records: Sequence[DocumentRecord], models: Models | None = None,
                    system: Mapping[str, TemporalGraph] | None = None, relaxed: bool = False,
                    mode: str = "strict", max_sent_dist: int = DEFAULT_MAX_SENT_DIST) -> Report:
    """Score system output against gold records.

    With ``models`` the pipeline is run here, and TempRel is also scored
    on gold nodes. With ``system`` (graphs keyed by document id) only
    end-to-end rows are produced; a missing id scores as an empty graph.
    """
    if (models is None) == (system is None):
        raise ValueError("pass exactly one of models or system")
    gold = [record_to_gold(r) for r in records]
    timex, events, norm_gold, norm_pred = [], [], [], []
    rows: dict = {}
    acc = {"ee_gold": [], "ee_gold_relaxed": [], "et_gold": [],
           "ee_system": [], "ee_system_relaxed": [], "et_system": []}
    for g in gold:
        for t in g.graph.timexes:
            norm_gold.append(t.value)
            norm_pred.append(_normalized_value(t.text, g.doc.dct))
        if models is not None:
            pred = annotate_document(g.doc, models, max_sent_dist=max_sent_dist).graph
            gold_nodes = annotate_temprel(g.doc, g.graph.events, g.graph.timexes, models.temprel,
                                          models.temprob, max_sent_dist=max_sent_dist)
            acc["ee_gold"].append(score_temprel(graph_edges(g.graph), graph_edges(gold_nodes)))
            acc["ee_gold_relaxed"].append(score_temprel(graph_edges(g.graph), graph_edges(gold_nodes),
                                                        relaxed=True))
            acc["et_gold"].append(score_temprel(graph_edges(g.graph, "ET"), graph_edges(gold_nodes, "ET"),
                                                kind="ET"))
        else:
            pred = system.get(g.doc.id) or TemporalGraph(())
        timex.append((g.timex_spans, [t.span for t in pred.timexes]))
        events.append(([e.span or g.doc.tokens[e.token_index].span for e in g.graph.events],
                       [e.span or g.doc.tokens[e.token_index].span for e in pred.events]))
        acc["ee_system"].append(score_temprel_system(g.graph, pred))
        acc["ee_system_relaxed"].append(score_temprel_system(g.graph, pred, relaxed=True))
        acc["et_system"].append(score_temprel_system(g.graph, pred, kind="ET"))
    rows["timex_extraction"] = score_extraction_corpus(timex, mode)
    rows["timex_normalization"] = score_normalization(norm_gold, norm_pred)
    rows["event_extraction"] = score_extraction_corpus(events, mode)
    for name, parts in acc.items():
        if not parts or (name.endswith("relaxed") and not relaxed):
            continue
        rows[name] = sum(parts[1:], parts[0])
    return Report(rows)
