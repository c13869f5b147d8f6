"""Timeline construction and graph/timeline renderings (DOT, HTML, JSON)."""

from __future__ import annotations

import heapq
import html
import json
from dataclasses import dataclass, field

from .core import (Document, EEEdge, EERelation, ETEdge, ETRelation, EventMention,
                   LabelDistribution, Span, TemporalGraph, TempusError, TimexMention, TimexType,
                   node_position, EE_LABELS, ET_LABELS)

SCHEMA_VERSION = 1


class TimelineCycleError(TempusError):
    pass


@dataclass(frozen=True)
class Timeline:
    groups: tuple  # tuple of tuples of node ids, each sorted by position
    unanchored: tuple = ()  # timex ids with no Equal edge to any event
    anchors: dict = field(default_factory=dict)  # group index -> tuple of timex values

    def position_of(self, node_id: int) -> int | None:
        for gi, g in enumerate(self.groups):
            if node_id in g:
                return gi
        return None


class _DSU:
    def __init__(self, items):
        self.parent = {x: x for x in items}

    def find(self, x):
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[max(ra, rb)] = min(ra, rb)


def build_timeline(graph: TemporalGraph, doc: Document | None = None) -> Timeline:
    """Order Equal-groups by Before edges, falling back to appearance order.

    Events form groups through Equal EE edges. A timex joins the earliest
    group holding an event it is Equal to; other timexes are unanchored.
    """
    pos = {n.id: (node_position(n), n.id) for n in graph.nodes}
    events = [n.id for n in graph.nodes if isinstance(n, EventMention)]
    dsu = _DSU(events)
    for e in graph.ee_edges:
        if EERelation(e.label) is EERelation.EQUAL:
            dsu.union(e.source, e.target)
    members: dict = {}
    for ev in events:
        members.setdefault(dsu.find(ev), []).append(ev)
    succ = {r: set() for r in members}
    indeg = {r: 0 for r in members}
    for e in graph.ee_edges:
        lab = EERelation(e.label)
        if lab is EERelation.BEFORE:
            u, v = dsu.find(e.source), dsu.find(e.target)
        elif lab is EERelation.AFTER:
            u, v = dsu.find(e.target), dsu.find(e.source)
        else:
            continue
        if u == v:
            raise TimelineCycleError(f"Before edge inside an Equal group: {e.pair}")
        if v not in succ[u]:
            succ[u].add(v)
            indeg[v] += 1
    first = {r: min(pos[m] for m in ms) for r, ms in members.items()}
    ready = [(first[r], r) for r in members if indeg[r] == 0]
    heapq.heapify(ready)
    order = []
    while ready:
        _, r = heapq.heappop(ready)
        order.append(r)
        for v in sorted(succ[r]):
            indeg[v] -= 1
            if indeg[v] == 0:
                heapq.heappush(ready, (first[v], v))
    if len(order) != len(members):
        raise TimelineCycleError("Before edges form a cycle")
    group_of = {r: gi for gi, r in enumerate(order)}
    groups = [sorted(members[r], key=pos.get) for r in order]
    unanchored = []
    for t in graph.timexes:
        linked = [group_of[dsu.find(e.event)] for e in graph.et_edges
                  if e.timex == t.id and ETRelation(e.label) is ETRelation.EQUAL]
        if linked:
            groups[min(linked)].append(t.id)
        else:
            unanchored.append(t.id)
    groups = tuple(tuple(sorted(g, key=pos.get)) for g in groups)
    anchors = {}
    for gi, g in enumerate(groups):
        values = tuple(graph.node(n).value or "" for n in g if isinstance(graph.node(n), TimexMention))
        if values:
            anchors[gi] = values
    return Timeline(groups, tuple(sorted(unanchored, key=pos.get)), anchors)


def _node_label(node) -> str:
    if isinstance(node, TimexMention):
        return f"{node.text} [{node.value}]" if node.value else node.text
    return node.surface or node.lemma


def _dot_quote(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def emit_dot(graph: TemporalGraph) -> str:
    """Graphviz digraph. Before is drawn forward, After is drawn reversed as Before."""
    lines = [f"// schema_version={SCHEMA_VERSION}", "digraph temporal {"]
    for n in graph.nodes:
        shape = "box" if isinstance(n, TimexMention) else "ellipse"
        lines.append(f"  n{n.id} [label={_dot_quote(_node_label(n))}, shape={shape}];")
    for e in graph.ee_edges:
        lab = EERelation(e.label)
        if lab is EERelation.BEFORE:
            lines.append(f'  n{e.source} -> n{e.target} [label="before"];')
        elif lab is EERelation.AFTER:
            lines.append(f'  n{e.target} -> n{e.source} [label="before"];')
        elif lab is EERelation.EQUAL:
            lines.append(f'  n{e.source} -> n{e.target} [label="equal", dir=none];')
        else:
            lines.append(f'  n{e.source} -> n{e.target} [label="vague", style=dashed, dir=none];')
    for e in graph.et_edges:
        if ETRelation(e.label) is ETRelation.EQUAL:
            lines.append(f'  n{e.event} -> n{e.timex} [label="equal", dir=none];')
    lines.append("}")
    return "\n".join(lines) + "\n"


_HTML_STYLE = """
body { font-family: sans-serif; max-width: 50em; margin: 2em auto; }
.event { background: #ffe0a0; }
.timex { background: #a0d8ff; }
.value { font-size: 70%; color: #036; vertical-align: super; }
ol.timeline li { margin: .3em 0; }
"""


def emit_html(timeline: Timeline, doc: Document, graph: TemporalGraph) -> str:
    """Static page: highlighted text plus the ordered timeline. No external resources."""
    marks = []
    for n in graph.nodes:
        span = n.span if isinstance(n, TimexMention) else (n.span or doc.tokens[n.token_index].span)
        marks.append((span.start, span.end, n))
    marks.sort(key=lambda m: (m[0], -m[1]))
    out, cursor = [], 0
    for start, end, n in marks:
        if start < cursor:
            continue  # nested or overlapping mentions keep the outer one
        out.append(html.escape(doc.text[cursor:start]))
        inner = html.escape(doc.text[start:end])
        if isinstance(n, TimexMention):
            out.append(f'<span class="timex" id="n{n.id}">{inner}'
                       f'<span class="value">{html.escape(n.value or "?")}</span></span>')
        else:
            out.append(f'<span class="event" id="n{n.id}">{inner}</span>')
        cursor = end
    out.append(html.escape(doc.text[cursor:]))
    items = []
    for gi, g in enumerate(timeline.groups):
        names = ", ".join(html.escape(_node_label(graph.node(n))) for n in g)
        items.append(f"<li>{names}</li>")
    unanchored = "".join(f"<li>{html.escape(_node_label(graph.node(n)))}</li>" for n in timeline.unanchored)
    title = html.escape(doc.id or "document")
    dct = html.escape(doc.dct.isoformat()) if doc.dct else "unknown"
    return (
        "<!DOCTYPE html>\n<html><head><meta charset=\"utf-8\">"
        f"<meta name=\"schema_version\" content=\"{SCHEMA_VERSION}\">"
        f"<title>{title}</title><style>{_HTML_STYLE}</style></head><body>\n"
        f"<h1>{title}</h1><p>DCT: {dct}</p>\n"
        f"<p class=\"text\">{''.join(out)}</p>\n"
        f"<h2>Timeline</h2><ol class=\"timeline\">{''.join(items)}</ol>\n"
        f"<h2>Unanchored time expressions</h2><ul>{unanchored}</ul>\n"
        "</body></html>\n"
    )


def _dist_json(d: LabelDistribution | None):
    if d is None:
        return None
    return {getattr(l, "value", l): d[l] for l in d.labels}


def graph_to_dict(graph: TemporalGraph) -> dict:
    nodes = []
    for n in graph.nodes:
        if isinstance(n, EventMention):
            nodes.append({"kind": "event", "id": n.id, "token_index": n.token_index, "lemma": n.lemma,
                          "surface": n.surface,
                          "span": [n.span.start, n.span.end] if n.span else None})
        else:
            nodes.append({"kind": "timex", "id": n.id, "span": [n.span.start, n.span.end],
                          "type": TimexType(n.ttype).value, "value": n.value, "text": n.text})
    return {
        "nodes": nodes,
        "ee_edges": [{"e1": e.source, "e2": e.target, "label": EERelation(e.label).value,
                      "distribution": _dist_json(e.distribution)} for e in graph.ee_edges],
        "et_edges": [{"e": e.event, "t": e.timex, "label": ETRelation(e.label).value,
                      "distribution": _dist_json(e.distribution)} for e in graph.et_edges],
    }


def graph_from_dict(data: dict) -> TemporalGraph:
    nodes = []
    for n in data["nodes"]:
        if n["kind"] == "event":
            span = Span(*n["span"]) if n.get("span") else None
            nodes.append(EventMention(n["id"], n["token_index"], n["lemma"], n.get("surface", ""), span))
        else:
            nodes.append(TimexMention(n["id"], Span(*n["span"]), TimexType(n["type"]), n["value"],
                                      n.get("text", "")))

    def dist(d, labels):
        if d is None:
            return None
        return LabelDistribution({l: d[l.value] for l in labels}, labels)

    ee = tuple(EEEdge(e["e1"], e["e2"], EERelation(e["label"]), dist(e.get("distribution"), EE_LABELS))
               for e in data["ee_edges"])
    et = tuple(ETEdge(e["e"], e["t"], ETRelation(e["label"]), dist(e.get("distribution"), ET_LABELS))
               for e in data["et_edges"])
    return TemporalGraph(tuple(nodes), ee, et)


def emit_json(graph: TemporalGraph, timeline: Timeline | None = None, doc: Document | None = None,
              indent: int | None = 2) -> str:
    """Versioned JSON; ``parse_json`` reads it back. ``indent=None`` gives one line."""
    data = {"schema_version": SCHEMA_VERSION}
    if doc is not None:
        data["id"] = doc.id
        data["text"] = doc.text
        data["dct"] = doc.dct.isoformat() if doc.dct else None
    data["graph"] = graph_to_dict(graph)
    if timeline is not None:
        data["timeline"] = {
            "groups": [list(g) for g in timeline.groups],
            "unanchored": list(timeline.unanchored),
            "anchors": {str(k): list(v) for k, v in sorted(timeline.anchors.items())},
        }
    return json.dumps(data, indent=indent, sort_keys=True, ensure_ascii=False) + "\n"


def parse_json(text: str) -> tuple[TemporalGraph, Timeline | None]:
    data = json.loads(text)
    if data.get("schema_version") != SCHEMA_VERSION:
        raise ValueError(f"unsupported schema_version {data.get('schema_version')!r}")
    graph = graph_from_dict(data["graph"])
    timeline = None
    if "timeline" in data:
        tl = data["timeline"]
        timeline = Timeline(tuple(tuple(g) for g in tl["groups"]), tuple(tl["unanchored"]),
                            {int(k): tuple(v) for k, v in tl["anchors"].items()})
    return graph, timeline


def emit_text(timeline: Timeline, graph: TemporalGraph) -> str:
    lines = [f"# schema_version: {SCHEMA_VERSION}"]
    for gi, g in enumerate(timeline.groups):
        lines.append(f"{gi + 1:>3}. " + " = ".join(_node_label(graph.node(n)) for n in g))
    if timeline.unanchored:
        lines.append("unanchored: " + ", ".join(_node_label(graph.node(n)) for n in timeline.unanchored))
    return "\n".join(lines) + "\n"
