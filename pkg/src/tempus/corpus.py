"""Corpus I/O (JSON Lines document records, CoNLL columns) and the synthetic generator.

A document record is one JSON object per line::

    {"id": "doc0001", "text": "...", "dct": "1998-02-27",
     "gold": {"timexes": [{"span": [s, e], "type": "Date", "value": "1998-02-27"}],
              "events": [{"token_index": 4}],
              "ee_edges": [{"e1": 0, "e2": 1, "label": "Before"}],
              "et_edges": [{"e": 0, "t": 0, "label": "Equal"}]}}

Edge endpoints index into the ``events`` and ``timexes`` lists.
"""

from __future__ import annotations

import calendar
import datetime as dt
import json
import random
from dataclasses import dataclass, field
from typing import Iterable, Iterator

from .core import (DCT, Document, EEEdge, EERelation, ETEdge, ETRelation, EventMention, Span,
                   TemporalGraph, TempusError, TimexMention, TimexType, assign_ids)
from .io import atomic_write_text
from .preprocess import AUX_LEMMAS, preprocess

SCHEMA_VERSION = 1


class CorpusFormatError(TempusError):
    def __init__(self, source: str, line: int, message: str):
        super().__init__(f"{source}:{line}: {message}")
        self.source = source
        self.line = line


@dataclass
class DocumentRecord:
    id: str
    text: str
    dct: str | None = None
    gold: dict | None = None

    def to_json(self) -> str:
        data = {"id": self.id, "text": self.text, "dct": self.dct}
        if self.gold is not None:
            data["gold"] = self.gold
        return json.dumps(data, ensure_ascii=False, sort_keys=True)


def _check(cond, source, line, msg):
    if not cond:
        raise CorpusFormatError(source, line, msg)


def validate_record(data, source: str = "<record>", line: int = 1) -> DocumentRecord:
    _check(isinstance(data, dict), source, line, "record must be a JSON object")
    for key in ("id", "text"):
        _check(isinstance(data.get(key), str), source, line, f"field {key!r} must be a string")
    text = data["text"]
    dct = data.get("dct")
    if dct is not None:
        _check(isinstance(dct, str), source, line, "dct must be an ISO date string")
        try:
            DCT.parse(dct)
        except ValueError:
            raise CorpusFormatError(source, line, f"dct {dct!r} is not an ISO date") from None
    gold = data.get("gold")
    if gold is not None:
        _check(isinstance(gold, dict), source, line, "gold must be an object")
        timexes = gold.get("timexes", [])
        events = gold.get("events", [])
        for k, t in enumerate(timexes):
            where = f"gold.timexes[{k}]"
            span = t.get("span")
            _check(isinstance(span, list) and len(span) == 2 and all(isinstance(x, int) for x in span),
                   source, line, f"{where}.span must be [start, end]")
            _check(0 <= span[0] < span[1] <= len(text), source, line,
                   f"{where}.span {span} outside text of length {len(text)}")
            try:
                TimexType(t.get("type"))
            except ValueError:
                raise CorpusFormatError(source, line, f"{where}.type {t.get('type')!r} unknown") from None
            _check(t.get("value") is None or isinstance(t.get("value"), str), source, line,
                   f"{where}.value must be a string")
        for k, e in enumerate(events):
            _check(isinstance(e.get("token_index"), int) and e["token_index"] >= 0, source, line,
                   f"gold.events[{k}].token_index must be a non-negative integer")
        for k, e in enumerate(gold.get("ee_edges", [])):
            where = f"gold.ee_edges[{k}]"
            for end in ("e1", "e2"):
                _check(isinstance(e.get(end), int) and 0 <= e[end] < len(events), source, line,
                       f"{where}.{end} does not index an event")
            _check(e["e1"] != e["e2"], source, line, f"{where} is a self loop")
            try:
                EERelation(e.get("label"))
            except ValueError:
                raise CorpusFormatError(source, line, f"{where}.label {e.get('label')!r} unknown") from None
        for k, e in enumerate(gold.get("et_edges", [])):
            where = f"gold.et_edges[{k}]"
            _check(isinstance(e.get("e"), int) and 0 <= e["e"] < len(events), source, line,
                   f"{where}.e does not index an event")
            _check(isinstance(e.get("t"), int) and 0 <= e["t"] < len(timexes), source, line,
                   f"{where}.t does not index a timex")
            try:
                ETRelation(e.get("label"))
            except ValueError:
                raise CorpusFormatError(source, line, f"{where}.label {e.get('label')!r} unknown") from None
    return DocumentRecord(data["id"], text, dct, gold)


def iter_jsonl(path) -> Iterator[DocumentRecord]:
    source = str(path)
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, 1):
            if not raw.strip():
                continue
            try:
                data = json.loads(raw)
            except json.JSONDecodeError as exc:
                raise CorpusFormatError(source, lineno, f"invalid JSON at column {exc.colno}: {exc.msg}") from None
            yield validate_record(data, source, lineno)


def load_jsonl(path) -> list[DocumentRecord]:
    return list(iter_jsonl(path))


def dumps_jsonl(records: Iterable[DocumentRecord]) -> str:
    return "".join(r.to_json() + "\n" for r in records)


def save_jsonl(records: Iterable[DocumentRecord], path) -> None:
    atomic_write_text(path, dumps_jsonl(records))


@dataclass
class GoldDocument:
    doc: Document
    graph: TemporalGraph

    @property
    def timex_spans(self) -> list[Span]:
        return [t.span for t in self.graph.timexes]

    @property
    def event_indices(self) -> list[int]:
        return [e.token_index for e in self.graph.events]


def record_to_gold(record: DocumentRecord) -> GoldDocument:
    """Preprocess the text and build the gold graph with joint node ids."""
    doc = preprocess(record.text, record.dct, record.id)
    gold = record.gold or {}
    events = []
    for k, e in enumerate(gold.get("events", [])):
        i = e["token_index"]
        if i >= len(doc.tokens):
            raise CorpusFormatError(record.id, 1, f"gold.events[{k}].token_index {i} out of range")
        tok = doc.tokens[i]
        events.append(EventMention(k, i, tok.lemma, tok.surface, tok.span))
    timexes = [TimexMention(k, Span(*t["span"]), TimexType(t["type"]), t.get("value"),
                            record.text[t["span"][0]:t["span"][1]])
               for k, t in enumerate(gold.get("timexes", []))]
    events, timexes, mapping = assign_ids(events, timexes)
    ee = tuple(EEEdge(mapping[("event", e["e1"])], mapping[("event", e["e2"])], EERelation(e["label"]))
               for e in gold.get("ee_edges", []))
    et = tuple(ETEdge(mapping[("event", e["e"])], mapping[("timex", e["t"])], ETRelation(e["label"]))
               for e in gold.get("et_edges", []))
    nodes = sorted(events + timexes, key=lambda n: n.id)
    return GoldDocument(doc, TemporalGraph(tuple(nodes), ee, et))


def graph_to_gold_dict(graph: TemporalGraph) -> dict:
    """Inverse of :func:`record_to_gold` for the ``gold`` field."""
    events = graph.events
    timexes = graph.timexes
    ev_index = {e.id: k for k, e in enumerate(events)}
    tx_index = {t.id: k for k, t in enumerate(timexes)}
    return {
        "timexes": [{"span": [t.span.start, t.span.end], "type": TimexType(t.ttype).value, "value": t.value}
                    for t in timexes],
        "events": [{"token_index": e.token_index} for e in events],
        "ee_edges": [{"e1": ev_index[e.source], "e2": ev_index[e.target], "label": EERelation(e.label).value}
                     for e in graph.ee_edges],
        "et_edges": [{"e": ev_index[e.event], "t": tx_index[e.timex], "label": ETRelation(e.label).value}
                     for e in graph.et_edges],
    }


# -- CoNLL columns ---------------------------------------------------------

def dumps_conll(doc: Document, tags: list[str]) -> str:
    """``surface<TAB>pos<TAB>tag`` per token, blank line between sentences."""
    if len(tags) != len(doc.tokens):
        raise ValueError("one tag per token required")
    lines = [f"# doc_id = {doc.id}"]
    for a, b in doc.sentences:
        for i in range(a, b):
            lines.append(f"{doc.tokens[i].surface}\t{doc.tokens[i].pos}\t{tags[i]}")
        lines.append("")
    return "\n".join(lines) + "\n"


def loads_conll(text: str, source: str = "<conll>") -> list[tuple[str, list[list[tuple[str, str, str]]]]]:
    """Parse CoNLL text into ``[(doc_id, sentences)]``; each row is (surface, pos, tag)."""
    docs: list = []
    sentence: list = []
    for lineno, line in enumerate(text.splitlines(), 1):
        if line.startswith("# doc_id = "):
            if sentence:
                docs[-1][1].append(sentence)
                sentence = []
            docs.append((line[len("# doc_id = "):], []))
            continue
        if not line.strip():
            if sentence:
                docs[-1][1].append(sentence)
                sentence = []
            continue
        parts = line.split("\t")
        if len(parts) != 3:
            raise CorpusFormatError(source, lineno, "expected 3 tab-separated columns")
        if not docs:
            docs.append(("", []))
        sentence.append(tuple(parts))
    if sentence:
        docs[-1][1].append(sentence)
    return docs


def event_tags(doc: Document, event_indices: Iterable[int]) -> list[str]:
    idx = set(event_indices)
    return ["EVENT" if i in idx else "O" for i in range(len(doc.tokens))]


# -- synthetic generator ---------------------------------------------------

_SINGULAR = ("the manager", "the team", "the company", "the president", "the pilot", "a car",
             "the farmer", "the doctor", "the army", "the board", "the mayor", "a bomb",
             "she", "he", "the coach", "the senator")
_PLURAL = ("the police", "officials", "investors", "the workers", "the students", "they", "the men")
# (past, past participle, base)
_VERBS = (
    ("arrived", "arrived", "arrive"), ("left", "left", "leave"), ("exploded", "exploded", "explode"),
    ("died", "died", "die"), ("resigned", "resigned", "resign"), ("returned", "returned", "return"),
    ("collapsed", "collapsed", "collapse"), ("landed", "landed", "land"), ("voted", "voted", "vote"),
    ("crashed", "crashed", "crash"), ("fled", "fled", "flee"), ("moved", "moved", "move"),
)
_TRANSITIVE = (
    ("signed", "signed", "sign"), ("visited", "visited", "visit"), ("attacked", "attacked", "attack"),
    ("closed", "closed", "close"), ("launched", "launched", "launch"), ("won", "won", "win"),
    ("lost", "lost", "lose"), ("sold", "sold", "sell"), ("bought", "bought", "buy"),
    ("built", "built", "build"), ("announced", "announced", "announce"), ("finished", "finished", "finish"),
    ("started", "started", "start"), ("called", "called", "call"),
)
_OBJECTS = ("the contract", "the factory", "the bridge", "the city", "the agreement", "the station",
            "the border", "the office", "the school", "the match", "the election", "the project")
_CONTROL = ("decided", "agreed", "planned", "wanted", "promised", "tried", "refused", "hoped")
_ING = ("leaving", "hoping", "saying", "smiling", "waiting", "playing", "watching")
_MONTH_NAMES = tuple(calendar.month_name[1:])
_WEEKDAY_NAMES = ("Monday", "Tuesday", "Wednesday", "Thursday", "Friday", "Saturday", "Sunday")
_NUM_WORDS = ("zero", "one", "two", "three", "four", "five", "six", "seven", "eight", "nine", "ten")


@dataclass
class _Builder:
    text: str = ""
    marks: list = field(default_factory=list)  # (kind, key, start, end)

    def add(self, s: str, mark=None, space: bool = True):
        # no space right after an opening quote
        if space and self.text and not (self.text.endswith("\"") and self._quote_open()):
            self.text += " "
        start = len(self.text)
        self.text += s
        if mark is not None:
            self.marks.append((mark[0], mark[1], start, len(self.text)))

    def _quote_open(self) -> bool:
        return self.text.count("\"") % 2 == 1


def _iso_week(d: dt.date) -> str:
    y, w, _ = d.isocalendar()
    return f"{y}-W{w:02d}"


def _add_months(d: dt.date, n: int) -> tuple[int, int]:
    m = d.month - 1 + n
    return d.year + m // 12, m % 12 + 1


def _number(rng, n: int) -> str:
    return _NUM_WORDS[n] if rng.random() < 0.5 else str(n)


def _timex(rng: random.Random, dct: dt.date) -> tuple[str | None, str, str, str]:
    """``(preposition, phrase, type, value)`` with values computed from the DCT."""
    kind = rng.choice(("absolute", "absolute", "relative", "relative", "time", "duration", "set"))
    if kind == "absolute":
        d = dct - dt.timedelta(days=rng.randint(30, 9000))
        form = rng.randrange(4)
        if form == 0:
            return "on", f"{_MONTH_NAMES[d.month - 1]} {d.day}, {d.year}", "Date", d.isoformat()
        if form == 1:
            return "in", f"{_MONTH_NAMES[d.month - 1]} {d.year}", "Date", f"{d.year}-{d.month:02d}"
        if form == 2:
            return "in", str(d.year), "Date", str(d.year)
        decade = d.year // 10 * 10
        return "in", f"the {decade}s", "Date", f"{decade // 10}X"
    if kind == "relative":
        form = rng.randrange(6)
        if form == 0:
            word, off = rng.choice((("yesterday", -1), ("today", 0), ("tomorrow", 1)))
            return None, word, "Date", (dct + dt.timedelta(days=off)).isoformat()
        if form == 1:
            mod, sign = rng.choice((("last", -1), ("next", 1)))
            unit = rng.choice(("week", "month", "year"))
            if unit == "week":
                value = _iso_week(dct + dt.timedelta(days=7 * sign))
            elif unit == "month":
                y, m = _add_months(dct, sign)
                value = f"{y}-{m:02d}"
            else:
                value = str(dct.year + sign)
            return None, f"{mod} {unit}", "Date", value
        if form == 2:
            n = rng.randint(2, 10)
            return None, f"{_number(rng, n)} days ago", "Date", (dct - dt.timedelta(days=n)).isoformat()
        if form == 3:
            n = rng.randint(2, 10)
            y, m = _add_months(dct, -n)
            return None, f"{_number(rng, n)} months ago", "Date", f"{y}-{m:02d}"
        if form == 4:
            n = rng.randint(2, 10)
            return None, f"{_number(rng, n)} years ago", "Date", str(dct.year - n)
        wd = rng.randrange(7)
        mod = rng.choice(("last", "next"))
        if mod == "next":
            d = dct + dt.timedelta(days=(wd - dct.weekday() - 1) % 7 + 1)
        else:
            d = dct - dt.timedelta(days=(dct.weekday() - wd - 1) % 7 + 1)
        return None, f"{mod} {_WEEKDAY_NAMES[wd]}", "Date", d.isoformat()
    if kind == "time":
        form = rng.randrange(3)
        if form == 2:
            return None, "tonight", "Time", f"{dct.isoformat()}TXX:XX"
        h = rng.randint(1, 12)
        half = rng.choice(("am", "pm"))
        h24 = h % 12 + (12 if half == "pm" else 0)
        if form == 0:
            return "at", f"{h} {half}", "Time", f"T{h24:02d}:00"
        mm = rng.choice((15, 30, 45))
        return "at", f"{h}:{mm:02d} {half}", "Time", f"T{h24:02d}:{mm:02d}"
    if kind == "duration":
        if rng.random() < 0.2:
            q = rng.choice(("a few", "several"))
            unit, code = rng.choice((("days", "D"), ("weeks", "W"), ("years", "Y")))
            return "for", f"{q} {unit}", "Duration", f"PX{code}"
        n = rng.randint(2, 10)
        unit, value = rng.choice((("days", f"P{n}D"), ("weeks", f"P{n}W"), ("months", f"P{n}M"),
                                  ("years", f"P{n}Y"), ("hours", f"PT{n}H"), ("minutes", f"PT{n}M")))
        return "for", f"{_number(rng, n)} {unit}", "Duration", value
    form = rng.randrange(3)
    if form == 0:
        wd = rng.randrange(7)
        return None, f"every {_WEEKDAY_NAMES[wd]}", "Set", f"XXXX-WXX-{wd + 1}"
    if form == 1:
        unit, value = rng.choice((("day", "XXXX-XX-XX"), ("week", "XXXX-WXX"), ("month", "XXXX-XX"),
                                  ("year", "XXXX")))
        return None, f"every {unit}", "Set", value
    word, value = rng.choice((("daily", "XXXX-XX-XX"), ("weekly", "XXXX-WXX")))
    return None, word, "Set", value


class _Doc:
    def __init__(self, rng, dct):
        self.rng = rng
        self.dct = dct
        self.b = _Builder()
        self.n_events = 0
        self.timexes = []  # (type, value)
        self.sentences = []  # per sentence: dict(events=[...], within={}, attach={tkey: [ekeys]})

    def _subject(self, capital: bool) -> bool:
        """Emit a subject noun phrase; returns whether it is plural."""
        rng = self.rng
        r = rng.random()
        if r < 0.08:
            n = rng.randint(2, 90)
            s, plural = f"more than {n} people", True
        elif r < 0.14:
            s, plural = f"{rng.choice(_NUM_WORDS[2:])} {rng.choice(('workers', 'officials', 'students'))}", True
        elif r < 0.7:
            s, plural = rng.choice(_SINGULAR), False
        else:
            s, plural = rng.choice(_PLURAL), True
        self.b.add(s[0].upper() + s[1:] if capital else s)
        return plural

    def _event(self, word):
        k = self.n_events
        self.n_events += 1
        self.b.add(word, ("event", k))
        return k

    def clause(self, capital: bool, allow_timex: bool, sent: dict, allow_ing: bool = False) -> int:
        rng = self.rng
        plural = self._subject(capital)
        form = rng.random()
        past, pp, base = rng.choice(_VERBS + _TRANSITIVE)
        transitive = (past, pp, base) in _TRANSITIVE
        aspect = "simple"
        if form < 0.12:
            self.b.add("had")
            k = self._event(pp)
            aspect = "past_perfect"
        elif form < 0.24:
            self.b.add("have" if plural else "has")
            k = self._event(pp)
            aspect = "present_perfect"
        elif form < 0.36:
            k = self._event(rng.choice(_CONTROL))
            self.b.add("to")
            self.b.add(base)
        else:
            k = self._event(past)
        sent.setdefault("aspect", aspect)
        if transitive:
            self.b.add(rng.choice(_OBJECTS))
        if allow_timex and rng.random() < 0.4:
            self.timex(sent, [k])
        if allow_ing and rng.random() < 0.3:
            if rng.random() < 0.5:
                self.b.add(",", space=False)
            self.b.add(rng.choice(_ING))
            self.b.add(rng.choice(_OBJECTS))
        return k

    def timex(self, sent, attach):
        prep, phrase, ttype, value = _timex(self.rng, self.dct)
        if prep:
            self.b.add(prep)
        t = len(self.timexes)
        self.timexes.append((ttype, value))
        self.b.add(phrase, ("timex", t))
        sent["timexes"].append(t)
        if ttype in ("Date", "Time"):
            sent["attach"][t] = list(attach)

    def sentence(self, first: bool, prev_single: bool):
        rng = self.rng
        sent = {"events": [], "within": {}, "attach": {}, "timexes": [], "opener": None}
        template = rng.choices(("single", "between", "preposed", "quote", "report"),
                               (0.35, 0.3, 0.12, 0.11, 0.12))[0]
        capital = True
        if not first and template != "preposed":
            options = ["Later", "Earlier", "Then", None, None]
            if prev_single and template in ("single", "quote"):
                options.append("Meanwhile")
            op = rng.choice(options)
            if op:
                sent["opener"] = op
                self.b.add(op)
                self.b.add(",", space=False)
                capital = False
        if template == "single":
            k = self.clause(capital, True, sent, allow_ing=True)
            sent["events"] = [k]
        elif template == "quote":
            self.b.add("\"")
            inner = rng.random()
            if inner < 0.5:
                self.b.add("We" if capital else "we", space=False)
                self.b.add("will")
                past, pp, base = rng.choice(_VERBS + _TRANSITIVE)
                self.b.add(base)
            else:
                self.b.add("They" if capital else "they", space=False)
                past, pp, base = rng.choice(_VERBS + _TRANSITIVE)
                self.b.add(past)
            self.b.add(",", space=False)
            self.b.add("\"", space=False)
            self._subject(False)
            k = self._event("said")
            sent.setdefault("aspect", "simple")
            if rng.random() < 0.4:
                self.timex(sent, [k])
            sent["events"] = [k]
        elif template == "report":
            k1 = self.clause(capital, True, sent)
            self.b.add(",", space=False)
            self._subject(False)
            k2 = self._event("said")
            sent["events"] = [k1, k2]
            sent["within"][(k1, k2)] = "Before"  # the reported event precedes the report
        elif template == "between":
            conn = rng.choice(("before", "after", "when", "while", "and then"))
            k1 = self.clause(capital, True, sent)
            self.b.add(conn)
            k2 = self.clause(False, True, sent)
            sent["events"] = [k1, k2]
            sent["within"][(k1, k2)] = {"before": "Before", "and then": "Before", "after": "After"}.get(conn, "Equal")
            if conn in ("when", "while"):
                for t in sent["attach"]:
                    sent["attach"][t] = [k1, k2]
        else:
            conn = rng.choice(("before", "after", "when", "while"))
            self.b.add(conn.capitalize())
            ka = self.clause(False, True, sent)
            self.b.add(",", space=False)
            kb = self.clause(False, True, sent)
            sent["events"] = [ka, kb]
            # "Before A, B": B precedes A
            sent["within"][(ka, kb)] = {"before": "After", "after": "Before"}.get(conn, "Equal")
            if conn in ("when", "while"):
                for t in sent["attach"]:
                    sent["attach"][t] = [ka, kb]
        self.b.add(".", space=False)
        self.sentences.append(sent)
        return sent

    def gold(self) -> tuple[list, list]:
        ee, et = [], []
        for si, sent in enumerate(self.sentences):
            ee += [(a, b, lab) for (a, b), lab in sent["within"].items()]
            if si > 0:
                prev = self.sentences[si - 1]
                lab = {"Later": "Before", "Then": "Before", "Earlier": "After",
                       "Meanwhile": "Equal"}.get(sent["opener"])
                if lab is None:
                    # without an opener the aspect of the first event decides
                    lab = {"present_perfect": "Before", "past_perfect": "After"}.get(sent["aspect"], "Vague")
                for a in prev["events"]:
                    for b in sent["events"]:
                        ee.append((a, b, lab))
        for si, sent in enumerate(self.sentences):
            near = [s for s in (si - 1, si, si + 1) if 0 <= s < len(self.sentences)]
            for t in sent["timexes"]:
                linked = set(sent["attach"].get(t, []))
                for s in near:
                    for e in self.sentences[s]["events"]:
                        et.append((e, t, "Equal" if e in linked else "NotEqual"))
        return ee, et


def generate_document(rng: random.Random, doc_id: str, n_sentences: int | None = None) -> DocumentRecord:
    dct = dt.date(1995, 1, 1) + dt.timedelta(days=rng.randint(0, 9000))
    d = _Doc(rng, dct)
    n = n_sentences or rng.randint(3, 6)
    prev_single = False
    for i in range(n):
        sent = d.sentence(i == 0, prev_single)
        prev_single = len(sent["events"]) == 1
    text = d.b.text
    doc = preprocess(text, dct.isoformat(), doc_id)
    by_start = {tok.span.start: i for i, tok in enumerate(doc.tokens)}
    event_tokens = {}
    spans = {}
    for kind, key, s, e in d.b.marks:
        if kind == "event":
            event_tokens[key] = by_start[s]
        else:
            spans[key] = [s, e]
    ee, et = d.gold()
    gold = {
        "timexes": [{"span": spans[t], "type": ttype, "value": value} for t, (ttype, value) in enumerate(d.timexes)],
        "events": [{"token_index": event_tokens[k]} for k in range(d.n_events)],
        "ee_edges": [{"e1": a, "e2": b, "label": lab} for a, b, lab in ee],
        "et_edges": [{"e": e, "t": t, "label": lab} for e, t, lab in et],
    }
    return DocumentRecord(doc_id, text, dct.isoformat(), gold)


def generate_corpus(n_docs: int, seed: int = 0) -> list[DocumentRecord]:
    """Deterministic synthetic gold corpus."""
    rng = random.Random(seed)
    return [generate_document(rng, f"doc{i:04d}") for i in range(n_docs)]


def generate_text(n_tokens: int, seed: int = 0) -> list[str]:
    """Plain document texts totalling at least ``n_tokens`` tokens, for benchmarks."""
    rng = random.Random(seed)
    texts, total, i = [], 0, 0
    while total < n_tokens:
        rec = generate_document(rng, f"bench{i:05d}")
        texts.append(rec.text)
        total += len(preprocess(rec.text).tokens)
        i += 1
    return texts


def is_gold_event(doc: Document, i: int) -> bool:
    """Reference labelling rule the generator follows: non-auxiliary,
    non-participle verbs not governed by ``to`` and not inside quotes."""
    tok = doc.tokens[i]
    if tok.pos != "VERB" or tok.lemma in AUX_LEMMAS or tok.surface.lower().endswith("ing"):
        return False
    a, _ = doc.sentences[tok.sentence_index]
    if i > a and doc.tokens[i - 1].surface.lower() == "to":
        return False
    quotes = sum(1 for t in doc.tokens[a:i] if t.surface == "\"")
    return quotes % 2 == 0
