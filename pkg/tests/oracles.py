"""Independent reference implementations used by the tests.

Nothing here calls into the solver or the trainer under test; the ILP
oracle enumerates labellings and checks consistency with its own rule.
"""

import itertools
import random

from tempus.core import (EE_LABELS, ET_LABELS, EEEdge, EERelation, ETRelation, EventMention, LabelDistribution,
                         Span, TemporalGraph)
from tempus.temprel import ScoredEdge

BEFORE, AFTER, EQUAL, VAGUE = EE_LABELS
FLIP = {BEFORE: AFTER, AFTER: BEFORE, EQUAL: EQUAL, VAGUE: VAGUE}
TOL = 1e-9


def compose(r1, r2) -> set:
    """Labels allowed on (i,k) given (i,j)=r1 and (j,k)=r2."""
    if r1 is EQUAL:
        return {r2}
    if r2 is EQUAL:
        return {r1}
    if r1 is r2 and r1 in (BEFORE, AFTER):
        return {r1}
    return set(EE_LABELS)


def consistent(edges, labels) -> bool:
    """Transitivity over every ordered EE triple plus Equal-timex coupling."""
    ee, et = {}, {}
    for e, lab in zip(edges, labels):
        a, b = e.pair
        if e.kind == "EE":
            ee[a, b] = lab
            ee[b, a] = FLIP[lab]
        else:
            et[a, b] = lab
    nodes = sorted({n for pair in ee for n in pair})
    for i, j, k in itertools.permutations(nodes, 3):
        if (i, j) in ee and (j, k) in ee and (i, k) in ee:
            if ee[i, k] not in compose(ee[i, j], ee[j, k]):
                return False
    timexes = {t for _, t in et}
    for t in timexes:
        linked = sorted(e for (e, tt), lab in et.items() if tt == t and lab is ETRelation.EQUAL)
        for e1, e2 in itertools.combinations(linked, 2):
            if (e1, e2) in ee and ee[e1, e2] is not EQUAL:
                return False
    return True


def canonical(edges):
    return sorted(edges, key=lambda e: (min(e.pair), max(e.pair), 0 if e.kind == "EE" else 1))


def brute_force(scored_edges):
    """(objective, labels) of the lexicographically first optimal labelling.

    Edges are taken in canonical order and labels in the fixed label order,
    so ``itertools.product`` visits labellings lexicographically.
    """
    edges = canonical(scored_edges)
    domains = [EE_LABELS if e.kind == "EE" else ET_LABELS for e in edges]
    feasible = []
    for combo in itertools.product(*domains):
        if consistent(edges, combo):
            total = 0.0
            for e, lab in zip(edges, combo):
                total += e.distribution[lab]
            feasible.append((total, list(combo)))
    best = max(v for v, _ in feasible)
    for v, combo in feasible:
        if v >= best - TOL:
            return v, combo
    raise AssertionError("unreachable")


def _dist(rng, labels, dyadic):
    if dyadic:
        # multiples of 1/16 so that ties between labellings are exact
        cuts = sorted(rng.randint(0, 16) for _ in range(len(labels) - 1))
        parts = [b - a for a, b in zip([0] + cuts, cuts + [16])]
        return LabelDistribution({l: p / 16 for l, p in zip(labels, parts)}, labels)
    z = [rng.random() ** rng.choice((1, 3)) + 1e-6 for _ in labels]
    s = sum(z)
    return LabelDistribution({l: v / s for l, v in zip(labels, z)}, labels)


def random_instance(rng: random.Random, max_nodes: int = 4):
    """Full edge set over 2..max_nodes nodes with 0 or 1 timex."""
    n = rng.randint(2, max_nodes)
    n_timex = rng.randint(0, 1) if n > 2 else 0
    events = list(range(n - n_timex))
    timexes = list(range(n - n_timex, n))
    dyadic = rng.random() < 0.3
    edges = []
    for a, b in itertools.combinations(events, 2):
        pair = (a, b) if rng.random() < 0.8 else (b, a)
        edges.append(ScoredEdge("EE", pair, _dist(rng, EE_LABELS, dyadic)))
    for e in events:
        for t in timexes:
            edges.append(ScoredEdge("ET", (e, t), _dist(rng, ET_LABELS, dyadic)))
    return edges


def naive_averaged_perceptron(examples, labels, epochs, seed):
    """Averaged weights as the plain mean of w after every presentation."""
    labels = tuple(labels)
    w = {lab: {} for lab in labels}
    total = {lab: {} for lab in labels}
    order = list(range(len(examples)))
    rng = random.Random(seed)
    t = 0
    for _ in range(epochs):
        rng.shuffle(order)
        for i in order:
            fv, gold = examples[i]
            t += 1
            scores = {lab: sum(w[lab].get(f, 0.0) * v for f, v in fv.items()) for lab in labels}
            pred = labels[0]
            for lab in labels[1:]:
                if scores[lab] > scores[pred]:
                    pred = lab
            if pred != gold:
                for f, v in fv.items():
                    w[gold][f] = w[gold].get(f, 0.0) + v
                    w[pred][f] = w[pred].get(f, 0.0) - v
            for lab in labels:
                for f, v in w[lab].items():
                    total[lab][f] = total[lab].get(f, 0.0) + v
    return {lab: {f: v / t for f, v in total[lab].items()} for lab in labels}


def separable_data(rng: random.Random, n: int = 60, dims: int = 8, n_labels: int = 3):
    """Points labelled by the argmax of fixed random linear scorers, with a margin."""
    protos = [[rng.gauss(0, 1) for _ in range(dims)] for _ in range(n_labels)]
    out = []
    while len(out) < n:
        x = [rng.choice((0.0, 1.0)) for _ in range(dims)]
        s = sorted(((sum(p * v for p, v in zip(proto, x)), k) for k, proto in enumerate(protos)), reverse=True)
        if s[0][0] - s[1][0] < 0.5:
            continue
        fv = {d + 1: v for d, v in enumerate(x) if v}
        fv[0] = 1.0  # bias
        out.append((fv, f"L{s[0][1]}"))
    return out, [f"L{k}" for k in range(n_labels)]


def event(i, surface=None):
    return EventMention(i, i, surface or f"e{i}", surface or f"e{i}", Span(10 * i, 10 * i + 3))


def random_consistent_graph(rng: random.Random):
    """Events at random time points; every pair gets the label its points imply.

    Vagueness is decided per pair of distinct time points, so Equal events
    share it, and ordered chains are closed so the graph stays consistent.
    """
    n = rng.randint(1, 8)
    times = [rng.randint(0, 4) for _ in range(n)]
    vague_points = {(a, b) for a in range(5) for b in range(5) if a < b and rng.random() < 0.3}
    # Before composes to Before, so ordered chains of points must stay ordered
    changed = True
    while changed:
        changed = False
        for p, q, r in ((p, q, r) for p in range(5) for q in range(p + 1, 5) for r in range(q + 1, 5)):
            if (p, r) in vague_points and (p, q) not in vague_points and (q, r) not in vague_points:
                vague_points.discard((p, r))
                changed = True
    nodes = [event(i) for i in range(n)]
    edges = []
    for i in range(n):
        for j in range(i + 1, n):
            ti, tj = times[i], times[j]
            if ti == tj:
                lab = EQUAL
            elif (min(ti, tj), max(ti, tj)) in vague_points:
                lab = VAGUE
            else:
                lab = BEFORE if ti < tj else AFTER
            if rng.random() < 0.5:
                edges.append(EEEdge(i, j, lab))
            else:
                edges.append(EEEdge(j, i, FLIP[lab]))
    rng.shuffle(edges)
    return TemporalGraph(tuple(nodes), tuple(edges)), times


def greedy_order(graph):
    """Expected group order: repeatedly take the earliest-appearing group with no pending predecessor."""
    groups: dict = {}
    rep = {}
    for n in graph.events:
        rep[n.id] = n.id
    changed = True
    while changed:
        changed = False
        for e in graph.ee_edges:
            if e.label is EQUAL:
                a, b = rep[e.source], rep[e.target]
                if a != b:
                    lo, hi = min(a, b), max(a, b)
                    for k, v in rep.items():
                        if v == hi:
                            rep[k] = lo
                    changed = True
    for k, v in rep.items():
        groups.setdefault(v, []).append(k)
    preds = {g: set() for g in groups}
    for e in graph.ee_edges:
        if e.label is BEFORE:
            preds[rep[e.target]].add(rep[e.source])
        elif e.label is AFTER:
            preds[rep[e.source]].add(rep[e.target])
    done, order = set(), []
    while len(order) < len(groups):
        ready = [(min(groups[g]), g) for g in groups if g not in done and preds[g] <= done]
        _, g = min(ready)
        order.append(tuple(sorted(groups[g])))
        done.add(g)
    return tuple(order)


__all__ = ["EERelation", "brute_force", "consistent", "event", "greedy_order", "naive_averaged_perceptron",
           "random_consistent_graph", "random_instance", "separable_data"]
