"""Domain types shared by every pipeline stage.

Everything here is immutable after construction. The only behaviour is
validation (``__post_init__`` checks and :func:`validate_graph`) plus the
relation inverse :func:`reverse_ee`.
"""

from __future__ import annotations

import datetime as _dt
import enum
import math
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Mapping, Sequence


class TempusError(Exception):
    """Base class for errors raised by this package."""


class GraphValidationError(TempusError):
    pass


POS_TAGS = ("NOUN", "VERB", "ADJ", "ADV", "PREP", "DET", "NUM", "PUNCT", "OTHER")


@dataclass(frozen=True, order=True)
class Span:
    start: int
    end: int

    def __post_init__(self):
        if not (0 <= self.start < self.end):
            raise ValueError(f"invalid span [{self.start}, {self.end})")

    def __len__(self):
        return self.end - self.start

    def overlaps(self, other: "Span") -> bool:
        return self.start < other.end and other.start < self.end


@dataclass(frozen=True)
class Token:
    span: Span
    surface: str
    lemma: str = ""
    pos: str = "OTHER"
    sentence_index: int = 0

    def __post_init__(self):
        if self.pos not in POS_TAGS:
            raise ValueError(f"unknown POS tag {self.pos!r}")


@dataclass(frozen=True)
class DCT:
    """Document creation time. ``time`` is ``None`` for date-only DCTs."""

    date: _dt.date
    time: _dt.time | None = None

    @classmethod
    def parse(cls, value: str) -> "DCT":
        value = value.strip()
        if "T" in value:
            d, t = value.split("T", 1)
            return cls(_dt.date.fromisoformat(d), _dt.time.fromisoformat(t))
        return cls(_dt.date.fromisoformat(value))

    def isoformat(self) -> str:
        if self.time is None:
            return self.date.isoformat()
        return f"{self.date.isoformat()}T{self.time.strftime('%H:%M')}"

    def __str__(self):
        return self.isoformat()


@dataclass(frozen=True)
class Document:
    text: str
    tokens: tuple[Token, ...]
    sentences: tuple[tuple[int, int], ...]
    dct: DCT | None = None
    id: str = ""

    def __post_init__(self):
        prev_end = 0
        for tok in self.tokens:
            if tok.span.start < prev_end or tok.span.end > len(self.text):
                raise ValueError(f"token {tok.surface!r} out of order or out of bounds")
            prev_end = tok.span.end
        expected = 0
        for start, end in self.sentences:
            if start != expected or end <= start:
                raise ValueError("sentence ranges must partition the token list")
            expected = end
        if expected != len(self.tokens):
            raise ValueError("sentence ranges must partition the token list")

    def sentence_of(self, token_index: int) -> int:
        return self.tokens[token_index].sentence_index

    def token_range(self, span: Span) -> tuple[int, int]:
        """Indices ``[i, j)`` of the tokens covered by a character span."""
        idx = [i for i, t in enumerate(self.tokens) if t.span.overlaps(span)]
        if not idx:
            raise ValueError(f"span {span} covers no token")
        return idx[0], idx[-1] + 1


class TimexType(str, enum.Enum):
    DATE = "Date"
    TIME = "Time"
    DURATION = "Duration"
    SET = "Set"


class EERelation(str, enum.Enum):
    BEFORE = "Before"
    AFTER = "After"
    EQUAL = "Equal"
    VAGUE = "Vague"


class ETRelation(str, enum.Enum):
    EQUAL = "Equal"
    NOT_EQUAL = "NotEqual"


# Fixed label orders; used for tie-breaking everywhere.
EE_LABELS = (EERelation.BEFORE, EERelation.AFTER, EERelation.EQUAL, EERelation.VAGUE)
ET_LABELS = (ETRelation.EQUAL, ETRelation.NOT_EQUAL)

_REVERSE = {
    EERelation.BEFORE: EERelation.AFTER,
    EERelation.AFTER: EERelation.BEFORE,
    EERelation.EQUAL: EERelation.EQUAL,
    EERelation.VAGUE: EERelation.VAGUE,
}


def reverse_ee(label: EERelation) -> EERelation:
    """Relation seen from the other endpoint: Before and After swap."""
    return _REVERSE[EERelation(label)]


def parse_label(value: str):
    """Parse an EE or ET label name (case-insensitive)."""
    key = value.strip().lower().replace("-", "").replace("_", "")
    for lab in EE_LABELS + ET_LABELS:
        if lab.value.lower() == key:
            return lab
    raise ValueError(f"unknown relation label {value!r}")


@dataclass(frozen=True)
class TimexMention:
    id: int
    span: Span
    ttype: TimexType
    value: str | None
    text: str = ""


@dataclass(frozen=True)
class EventMention:
    id: int
    token_index: int
    lemma: str
    surface: str = ""
    span: Span | None = None


Node = EventMention | TimexMention


class LabelDistribution(Mapping):
    """Probability distribution over a closed label set.

    Iteration follows the label order given at construction.
    """

    __slots__ = ("_labels", "_probs")

    def __init__(self, probs: Mapping, labels: Sequence | None = None):
        labels = tuple(labels) if labels is not None else tuple(probs)
        if set(probs) != set(labels):
            raise ValueError("distribution support must equal the label set")
        values = tuple(float(probs[l]) for l in labels)
        if any(v < 0 or not math.isfinite(v) for v in values):
            raise ValueError("probabilities must be finite and non-negative")
        if abs(math.fsum(values) - 1.0) > 1e-9:
            raise ValueError(f"probabilities sum to {math.fsum(values)!r}, not 1")
        self._labels = labels
        self._probs = dict(zip(labels, values))

    def __getitem__(self, key):
        return self._probs[key]

    def __iter__(self) -> Iterator:
        return iter(self._labels)

    def __len__(self):
        return len(self._labels)

    def __eq__(self, other):
        if isinstance(other, LabelDistribution):
            return self._labels == other._labels and self._probs == other._probs
        return NotImplemented

    def __hash__(self):
        return hash((self._labels, tuple(self._probs.values())))

    def __repr__(self):
        inner = ", ".join(f"{getattr(l, 'value', l)}: {p:.4f}" for l, p in self._probs.items())
        return f"LabelDistribution({{{inner}}})"

    @property
    def labels(self) -> tuple:
        return self._labels

    def argmax(self):
        """Most probable label; ties go to the earliest label."""
        best = self._labels[0]
        for lab in self._labels[1:]:
            if self._probs[lab] > self._probs[best]:
                best = lab
        return best

    def reversed_ee(self) -> "LabelDistribution":
        return LabelDistribution({reverse_ee(l): p for l, p in self._probs.items()}, EE_LABELS)

    @classmethod
    def uniform(cls, labels: Sequence) -> "LabelDistribution":
        labels = tuple(labels)
        return cls({l: 1.0 / len(labels) for l in labels}, labels)


@dataclass(frozen=True)
class EEEdge:
    source: int
    target: int
    label: EERelation
    distribution: LabelDistribution | None = None

    @property
    def pair(self) -> tuple[int, int]:
        return (self.source, self.target)


@dataclass(frozen=True)
class ETEdge:
    event: int
    timex: int
    label: ETRelation
    distribution: LabelDistribution | None = None

    @property
    def pair(self) -> tuple[int, int]:
        return (self.event, self.timex)


@dataclass(frozen=True)
class TemporalGraph:
    nodes: tuple[Node, ...] = ()
    ee_edges: tuple[EEEdge, ...] = ()
    et_edges: tuple[ETEdge, ...] = ()
    _index: dict = field(default=None, init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "_index", {n.id: n for n in self.nodes})

    def node(self, node_id: int) -> Node:
        return self._index[node_id]

    @property
    def events(self) -> list[EventMention]:
        return [n for n in self.nodes if isinstance(n, EventMention)]

    @property
    def timexes(self) -> list[TimexMention]:
        return [n for n in self.nodes if isinstance(n, TimexMention)]

    def ee_label(self, a: int, b: int) -> EERelation | None:
        """Label of the EE edge oriented from ``a`` to ``b``, or ``None``."""
        for e in self.ee_edges:
            if e.pair == (a, b):
                return e.label
            if e.pair == (b, a):
                return reverse_ee(e.label)
        return None

    def relabel(self, ee: Mapping[tuple[int, int], EERelation] | None = None,
                et: Mapping[tuple[int, int], ETRelation] | None = None) -> "TemporalGraph":
        ee = ee or {}
        et = et or {}
        return TemporalGraph(
            self.nodes,
            tuple(EEEdge(e.source, e.target, ee.get(e.pair, e.label), e.distribution)
                  for e in self.ee_edges),
            tuple(ETEdge(e.event, e.timex, et.get(e.pair, e.label), e.distribution)
                  for e in self.et_edges),
        )


def node_position(node: Node) -> int:
    """Character offset used to order nodes in the document."""
    if isinstance(node, TimexMention):
        return node.span.start
    return node.span.start if node.span is not None else node.token_index


def validate_graph(graph: TemporalGraph, doc: Document | None = None) -> None:
    """Check the structural invariants of a temporal graph.

    Raises :class:`GraphValidationError` on the first problem found. Global
    consistency (transitivity) is checked separately by
    :func:`tempus.ilp.check_consistency`.
    """
    ids = [n.id for n in graph.nodes]
    if len(set(ids)) != len(ids):
        raise GraphValidationError("duplicate node ids")
    kinds = {n.id: type(n) for n in graph.nodes}
    seen: set[frozenset] = set()
    for e in graph.ee_edges:
        if kinds.get(e.source) is not EventMention or kinds.get(e.target) is not EventMention:
            raise GraphValidationError(f"EE edge {e.pair} must join two events")
        if e.source == e.target:
            raise GraphValidationError("self loop")
        key = frozenset(e.pair)
        if key in seen:
            raise GraphValidationError(f"more than one edge for pair {e.pair}")
        seen.add(key)
        if e.distribution is not None and set(e.distribution.labels) != set(EE_LABELS):
            raise GraphValidationError("EE distribution must cover the four EE labels")
    for e in graph.et_edges:
        if kinds.get(e.event) is not EventMention or kinds.get(e.timex) is not TimexMention:
            raise GraphValidationError(f"ET edge {e.pair} must join an event and a timex")
        key = frozenset(e.pair)
        if key in seen:
            raise GraphValidationError(f"more than one edge for pair {e.pair}")
        seen.add(key)
        if e.distribution is not None and set(e.distribution.labels) != set(ET_LABELS):
            raise GraphValidationError("ET distribution must cover Equal and NotEqual")
    if doc is not None:
        for n in graph.nodes:
            if isinstance(n, EventMention):
                if not 0 <= n.token_index < len(doc.tokens):
                    raise GraphValidationError(f"event {n.id} token out of range")
                if doc.tokens[n.token_index].pos != "VERB":
                    raise GraphValidationError(f"event {n.id} is not a verb token")
            elif n.span.end > len(doc.text):
                raise GraphValidationError(f"timex {n.id} span out of range")


def assign_ids(events: Iterable[EventMention], timexes: Iterable[TimexMention]):
    """Renumber events and timexes densely in document order.

    Returns ``(events, timexes, mapping)`` where mapping is keyed by
    ``("event"|"timex", old_id)``.
    """
    import dataclasses

    tagged = [(node_position(e), 0, "event", e) for e in events]
    tagged += [(node_position(t), 1, "timex", t) for t in timexes]
    tagged.sort(key=lambda x: (x[0], x[1]))
    new_events, new_timexes, mapping = [], [], {}
    for new_id, (_, _, kind, node) in enumerate(tagged):
        mapping[(kind, node.id)] = new_id
        renamed = dataclasses.replace(node, id=new_id)
        (new_events if kind == "event" else new_timexes).append(renamed)
    return new_events, new_timexes, mapping
