"""Exact 0-1 integer programming for globally consistent temporal graphs.

The problem has one binary variable per (edge, label). Constraints:

* uniqueness, one label per edge;
* transitivity over every triangle of Event-Event edges, written for each
  of the three choices of middle node: ``x(ij,r1) + x(jk,r2) -
  sum_{r3 in trans(r1,r2)} x(ik,r3) <= 1``;
* Event-Event / Event-Timex coupling: two events both Equal to the same
  Timex must be Equal to each other.

The solver is a depth-first branch and bound with constraint propagation.
It runs twice: first over edges in descending local-confidence order to
find the optimal objective, then over edges in canonical order with labels
in the fixed label order, stopping at the first assignment that reaches the
optimum. The second pass is what makes tie-breaking lexicographic.
"""

from __future__ import annotations

import functools
import itertools
import math
from dataclasses import dataclass, field
from typing import NamedTuple, Sequence

from .core import (EE_LABELS, ET_LABELS, EERelation, ETRelation, TemporalGraph,
                   TempusError, reverse_ee)

EPS = 1e-9

B, A, E, V = EE_LABELS
_ALL = frozenset(EE_LABELS)


def _standard_table() -> dict:
    table = {}
    for r1, r2 in itertools.product(EE_LABELS, repeat=2):
        if r1 is E:
            table[r1, r2] = frozenset([r2])
        elif r2 is E:
            table[r1, r2] = frozenset([r1])
        elif r1 is r2 and r1 in (B, A):
            table[r1, r2] = frozenset([r1])
        else:
            table[r1, r2] = _ALL
    return table


class CompositionTable:
    """Permitted labels on (i,k) given the labels on (i,j) and (j,k)."""

    def __init__(self, table: dict | None = None):
        self.table = dict(table) if table is not None else _standard_table()
        self.templates: dict = {}  # triangle constraint templates, filled by build_problem
        missing = set(itertools.product(EE_LABELS, repeat=2)) - set(self.table)
        if missing:
            raise ValueError(f"composition table is not total, missing {sorted(missing)}")

    def __call__(self, r1: EERelation, r2: EERelation) -> frozenset:
        return self.table[r1, r2]

    def reverse_closure_holds(self, r1: EERelation, r2: EERelation) -> bool:
        back = self.table[reverse_ee(r2), reverse_ee(r1)]
        return self.table[r1, r2] == frozenset(reverse_ee(r) for r in back)


STANDARD_TABLE = CompositionTable()


class Constraint(NamedTuple):
    terms: tuple  # ((var, coef), ...)
    rhs: int
    sense: str  # "<=" or "="
    kind: str  # "unique", "trans" or "coupling"


@dataclass
class IlpProblem:
    edges: list  # scored edges in canonical order
    labels: list  # per edge, tuple of labels in fixed order
    offsets: list
    objective: list  # coefficient per variable
    constraints: list = field(default_factory=list)
    # transitivity constraints regrouped per triangle as (edge indices, local pattern);
    # filled by build_problem so the solver need not regroup them
    trans_groups: list = field(default_factory=list)

    @property
    def n_vars(self) -> int:
        return len(self.objective)

    def var(self, edge_index: int, label) -> int:
        return self.offsets[edge_index] + self.labels[edge_index].index(label)

    def count(self, kind: str) -> int:
        return sum(1 for c in self.constraints if c.kind == kind)

    def objective_of(self, assignment: Sequence) -> float:
        """Objective of a full assignment, summed in canonical edge order."""
        total = 0.0
        for i, lab in enumerate(assignment):
            total += self.objective[self.var(i, lab)]
        return total

    def is_feasible(self, assignment: Sequence) -> bool:
        x = [0] * self.n_vars
        for i, lab in enumerate(assignment):
            x[self.var(i, lab)] = 1
        for c in self.constraints:
            lhs = sum(coef * x[v] for v, coef in c.terms)
            if c.sense == "=" and lhs != c.rhs:
                return False
            if c.sense == "<=" and lhs > c.rhs:
                return False
        return True

    def dump(self) -> str:
        """Plain-text rendering with ``VAR``, ``MAX`` and ``ST`` sections."""
        lines = ["VAR"]
        for i, edge in enumerate(self.edges):
            for lab in self.labels[i]:
                v = self.var(i, lab)
                lines.append(f"  x{v} {edge.kind} {edge.pair[0]} {edge.pair[1]} {lab.value}")
        lines.append("MAX")
        lines.append("  " + " + ".join(f"{c!r} x{v}" for v, c in enumerate(self.objective)))
        lines.append("ST")
        for n, c in enumerate(self.constraints):
            lhs = " ".join(f"{'+' if coef > 0 else '-'} {abs(coef)} x{v}" for v, coef in c.terms)
            lines.append(f"  c{n} [{c.kind}]: {lhs} {c.sense} {c.rhs}")
        return "\n".join(lines) + "\n"


def edge_sort_key(edge) -> tuple:
    a, b = edge.pair
    return (min(a, b), max(a, b), 0 if edge.kind == "EE" else 1)


def _triangle_template(table: CompositionTable, flags: tuple) -> list:
    """Transitivity constraints of one triangle as ``(slot, label index, coef)`` terms.

    Slots 0, 1, 2 are the edges (a,b), (b,c), (a,c) for nodes a < b < c;
    ``flags`` says which of them is stored reversed.
    """
    if flags in table.templates:
        return table.templates[flags]
    slot_of = {(0, 1): 0, (1, 2): 1, (0, 2): 2}

    def x(u, v, rel):
        if (u, v) in slot_of:
            slot = slot_of[u, v]
        else:
            slot, rel = slot_of[v, u], reverse_ee(rel)
        if flags[slot]:
            rel = reverse_ee(rel)
        return slot, EE_LABELS.index(rel)

    out = []
    for i, j, k in ((0, 1, 2), (1, 0, 2), (0, 2, 1)):
        for r1, r2 in itertools.product(EE_LABELS, repeat=2):
            terms: dict = {}
            for v in (x(i, j, r1), x(j, k, r2)):
                terms[v] = terms.get(v, 0) + 1
            for r3 in table(r1, r2):
                v = x(i, k, r3)
                terms[v] = terms.get(v, 0) - 1
            out.append(tuple((slot, lab, c) for (slot, lab), c in sorted(terms.items()) if c))
    table.templates[flags] = out
    return out


def _triangle_local(table: CompositionTable, flags: tuple, perm: tuple) -> tuple:
    """Triangle constraints in the solver's ``(rhs, ((pos, k, coef), ...))`` form."""
    cache_key = ("local", flags, perm)
    if cache_key not in table.templates:
        table.templates[cache_key] = tuple(sorted({
            (1, tuple(sorted((perm[slot], k, c) for slot, k, c in t)))
            for t in _triangle_template(table, flags)}))
    return table.templates[cache_key]


def build_problem(scored_edges: Sequence, table: CompositionTable = STANDARD_TABLE,
                  coupling: bool = True) -> IlpProblem:
    """Encode scored edges as a 0-1 program.

    Scored edges need ``kind`` ("EE" or "ET"), ``pair`` and ``distribution``.
    EE pairs are oriented source -> target; ET pairs are (event, timex).
    """
    edges = sorted(scored_edges, key=edge_sort_key)
    labels, offsets, objective = [], [], []
    for e in edges:
        labs = EE_LABELS if e.kind == "EE" else ET_LABELS
        offsets.append(len(objective))
        labels.append(labs)
        for lab in labs:
            p = float(e.distribution[lab])
            if not math.isfinite(p):
                raise ValueError("objective coefficients must be finite")
            objective.append(p)
    prob = IlpProblem(edges, labels, offsets, objective)

    for i, e in enumerate(edges):
        prob.constraints.append(Constraint(tuple((prob.var(i, l), 1) for l in labels[i]), 1, "=", "unique"))

    ee_index = {}
    for i, e in enumerate(edges):
        if e.kind == "EE":
            ee_index[frozenset(e.pair)] = i

    adjacency: dict = {}
    for key in ee_index:
        a, b = tuple(key)
        adjacency.setdefault(a, set()).add(b)
        adjacency.setdefault(b, set()).add(a)
    seen = set()
    for a in sorted(adjacency):
        for b in sorted(adjacency[a]):
            if b <= a:
                continue
            for c in sorted(adjacency[a] & adjacency[b]):
                if c <= b:
                    continue
                slots = [ee_index[frozenset(p)] for p in ((a, b), (b, c), (a, c))]
                flags = tuple(edges[i].pair != p for i, p in zip(slots, ((a, b), (b, c), (a, c))))
                key = tuple(sorted(slots))
                perm = tuple(key.index(i) for i in slots)
                prob.trans_groups.append((key, _triangle_local(table, flags, perm)))
                for template in _triangle_template(table, flags):
                    key = tuple(sorted((offsets[slots[slot]] + k, coef) for slot, k, coef in template))
                    if key in seen:
                        continue
                    seen.add(key)
                    prob.constraints.append(Constraint(key, 1, "<=", "trans"))

    if coupling:
        et_by_timex: dict = {}
        for i, e in enumerate(edges):
            if e.kind == "ET":
                et_by_timex.setdefault(e.pair[1], []).append((e.pair[0], i))
        for t in sorted(et_by_timex):
            links = sorted(et_by_timex[t])
            for (e1, i1), (e2, i2) in itertools.combinations(links, 2):
                key = frozenset((e1, e2))
                if key not in ee_index:
                    continue
                j = ee_index[key]
                terms = ((prob.var(i1, ETRelation.EQUAL), 1), (prob.var(i2, ETRelation.EQUAL), 1),
                         (prob.var(j, EERelation.EQUAL), -1))
                prob.constraints.append(Constraint(terms, 1, "<=", "coupling"))
    return prob


@dataclass
class Solution:
    labels: list  # label per edge, canonical order
    objective: float
    nodes_explored: int = 0

    def by_pair(self, problem: IlpProblem) -> dict:
        return {e.pair: lab for e, lab in zip(problem.edges, self.labels)}


class InfeasibleError(TempusError):
    pass


@functools.lru_cache(maxsize=1024)
def _feasible_tuples(sizes: tuple, local: tuple) -> list:
    """Joint labellings satisfying constraints given as ``(rhs, ((pos, k, coef), ...))``."""
    checks = []
    for rhs, terms in local:
        table = [[0] * s for s in sizes]
        for pos, k, c in terms:
            table[pos][k] += c
        checks.append((rhs, table))
    return [ks for ks in itertools.product(*(range(s) for s in sizes))
            if all(sum(t[pos][k] for pos, k in enumerate(ks)) <= rhs for rhs, t in checks)]


@functools.lru_cache(maxsize=1 << 16)
def _supports(sizes: tuple, local: tuple, doms: tuple) -> tuple:
    """Per position, the labels used by some feasible tuple inside ``doms``."""
    support = [0] * len(sizes)
    for ks in _feasible_tuples(sizes, local):
        if all(d >> k & 1 for d, k in zip(doms, ks)):
            for pos, k in enumerate(ks):
                support[pos] |= 1 << k
    return tuple(support)


class _Search:
    """Branch and bound over per-edge label domains held as bitmasks.

    Non-uniqueness constraints are grouped by the set of edges they touch.
    Each group keeps its feasible joint labellings, which drive propagation
    (a label survives only while some feasible tuple inside the current
    domains uses it) and the bound. The objective is written as a sum of
    per-edge terms plus per-group terms (a reparametrisation by messages
    ``delta[g][pos][k]``); any such split is exact on feasible assignments,
    so summing the best in-domain value of every term bounds the optimum.
    The split starts even and is tightened by max-product block updates.
    """

    MAX_GROUP_TUPLES = 4096
    MAX_SWEEPS = 50

    def __init__(self, problem: IlpProblem):
        self.p = problem
        n = len(problem.edges)
        self.n = n
        self.coef = [[problem.objective[problem.offsets[i] + k] for k in range(len(problem.labels[i]))]
                     for i in range(n)]
        self.full = [(1 << len(problem.labels[i])) - 1 for i in range(n)]
        var_owner = {}
        for i in range(n):
            for k in range(len(problem.labels[i])):
                var_owner[problem.offsets[i] + k] = (i, k)
        by_edges: dict = {}
        pregrouped = {key: local for key, local in problem.trans_groups}
        for c in problem.constraints:
            if c.kind == "unique" or (c.kind == "trans" and pregrouped):
                continue
            if c.sense != "<=":
                raise ValueError("only uniqueness constraints may be equalities")
            coefs: dict = {}
            for v, coef in c.terms:
                i, k = var_owner[v]
                coefs.setdefault(i, {})
                coefs[i][k] = coefs[i].get(k, 0) + coef
            by_edges.setdefault(tuple(sorted(coefs)), []).append((c.rhs, coefs))
        self.keys = []
        self.feasible = []
        self.patterns = []
        self.touching = [[] for _ in range(n)]
        for key, cons in by_edges.items():
            local = tuple(sorted((rhs, tuple(sorted((pos, k, c) for pos, i in enumerate(key)
                                                     for k, c in coefs.get(i, {}).items() if c)))
                                 for rhs, coefs in cons))
            if key in pregrouped:
                local = tuple(sorted(set(local) | set(pregrouped.pop(key))))
            by_edges[key] = local
        by_edges.update(pregrouped)
        for key, local in sorted(by_edges.items()):
            sizes = [len(problem.labels[i]) for i in key]
            if math.prod(sizes) > self.MAX_GROUP_TUPLES:
                raise ValueError("constraint touches too many edges for tuple enumeration")
            tuples = _feasible_tuples(tuple(sizes), local)
            gi = len(self.keys)
            self.keys.append(key)
            self.feasible.append(tuples)
            self.patterns.append((tuple(sizes), local))
            for i in key:
                self.touching[i].append(gi)
        share = [len(t) for t in self.touching]
        self.delta = [[[-self.coef[i][k] / share[i] for k in range(len(self.coef[i]))] for i in key]
                      for key in self.keys]
        self._refresh()
        self.explored = 0

    def _refresh(self):
        """Recompute edge terms and sorted group terms from the messages."""
        self.edge_term = [list(c) for c in self.coef]
        for g, key in enumerate(self.keys):
            for pos, i in enumerate(key):
                row = self.edge_term[i]
                for k, d in enumerate(self.delta[g][pos]):
                    row[k] += d
        self.groups = []
        for g, key in enumerate(self.keys):
            dg = self.delta[g]
            vals = [(-sum(dg[pos][k] for pos, k in enumerate(ks)), ks) for ks in self.feasible[g]]
            vals.sort(key=lambda t: -t[0])
            self.groups.append((key, vals))
        self._edge_memo = {}  # best in-domain values, valid until the messages change
        self._group_memo = [{} for _ in self.keys]

    def tighten(self, dom: list, target: float) -> None:
        """Block updates on the messages until the root bound stops improving."""
        prev = self.bound(dom)
        for _ in range(self.MAX_SWEEPS):
            if prev <= target + EPS:
                break
            for g, key in enumerate(self.keys):
                live = [ks for ks in self.feasible[g] if all(dom[i] >> k & 1 for i, k in zip(key, ks))]
                lam = [[self.edge_term[i][k] - self.delta[g][pos][k] for k in range(len(self.coef[i]))]
                       for pos, i in enumerate(key)]
                best = [[-math.inf] * len(self.coef[i]) for i in key]
                for ks in live:
                    tot = sum(lam[pos][k] for pos, k in enumerate(ks))
                    for pos, k in enumerate(ks):
                        if tot > best[pos][k]:
                            best[pos][k] = tot
                m = len(key)
                for pos, i in enumerate(key):
                    for k in range(len(self.coef[i])):
                        if best[pos][k] == -math.inf:
                            continue  # label already pruned at the root
                        self.delta[g][pos][k] = best[pos][k] / m - lam[pos][k]
                        self.edge_term[i][k] = best[pos][k] / m
            self._refresh()
            cur = self.bound(dom)
            if prev - cur < 1e-7:
                prev = cur
                break
            prev = cur

    def propagate(self, dom: list, changed) -> bool:
        queue = sorted({g for e in changed for g in self.touching[e]})
        queued = set(queue)
        while queue:
            g = queue.pop()
            queued.discard(g)
            key = self.keys[g]
            support = _supports(*self.patterns[g], tuple(dom[i] for i in key))
            for pos, i in enumerate(key):
                new = dom[i] & support[pos]
                if new == 0:
                    return False
                if new != dom[i]:
                    dom[i] = new
                    for g2 in self.touching[i]:
                        if g2 != g and g2 not in queued:
                            queue.append(g2)
                            queued.add(g2)
        return True

    def bound(self, dom) -> float:
        total = 0.0
        edge_memo = self._edge_memo
        for i, row in enumerate(self.edge_term):
            d = dom[i]
            best = edge_memo.get((i, d))
            if best is None:
                best = edge_memo[i, d] = max(c for k, c in enumerate(row) if d >> k & 1)
            total += best
        for g, (key, vals) in enumerate(self.groups):
            doms = tuple(dom[i] for i in key)
            memo = self._group_memo[g]
            best = memo.get(doms)
            if best is None:
                best = -math.inf
                for val, ks in vals:
                    if all(d >> k & 1 for d, k in zip(doms, ks)):
                        best = val
                        break
                memo[doms] = best
            if best == -math.inf:
                return best
            total += best
        return total

    def initial_domains(self):
        dom = list(self.full)
        if not self.propagate(dom, range(self.n)):
            raise InfeasibleError("problem is infeasible")
        return dom

    def value(self, dom) -> float:
        return sum(self.coef[i][d.bit_length() - 1] for i, d in enumerate(dom))

    def _dfs(self, dom, order, prefs, accept, prune):
        """Depth-first search in ``order``; returns the first accepted leaf."""
        def rec(depth, dom):
            self.explored += 1
            if depth == self.n:
                return dom if accept(dom) else None
            if prune(dom):
                return None
            i = order[depth]
            for k in prefs[i]:
                if not dom[i] >> k & 1:
                    continue
                child = list(dom)
                child[i] = 1 << k
                if self.propagate(child, (i,)):
                    found = rec(depth + 1, child)
                    if found is not None:
                        return found
            return None

        return rec(0, dom)

    def best_value(self) -> tuple[float, list]:
        """Optimal objective and one assignment reaching it."""
        order = sorted(range(self.n), key=lambda i: (-max(self.coef[i]), i))
        prefs = [sorted(range(len(self.coef[i])), key=lambda k: (-self.coef[i][k], k)) for i in range(self.n)]
        root = self.initial_domains()
        first = self._dfs(root, order, prefs, lambda d: True, lambda d: False)
        best = [self.value(first), first]
        self.tighten(root, best[0])

        def accept(dom):
            v = self.value(dom)
            if v > best[0] + EPS:
                best[0], best[1] = v, dom
            return False

        self._dfs(root, order, prefs, accept, lambda dom: self.bound(dom) <= best[0] + EPS)
        return best[0], [d.bit_length() - 1 for d in best[1]]

    def first_optimal(self, target: float, incumbent: Sequence[int]):
        """Lexicographically smallest assignment within EPS of ``target``.

        ``incumbent`` must reach ``target``; the answer is never later than
        it, so the incumbent's own branch needs no bound checks.
        """
        def rec(i, dom, on_path):
            self.explored += 1
            if i == self.n:
                return dom if self.value(dom) >= target - EPS else None
            if not on_path and self.bound(dom) < target - EPS:
                return None
            for k in range(len(self.coef[i])):
                if on_path and k > incumbent[i]:
                    break
                if not dom[i] >> k & 1:
                    continue
                child = list(dom)
                child[i] = 1 << k
                if self.propagate(child, (i,)):
                    found = rec(i + 1, child, on_path and k == incumbent[i])
                    if found is not None:
                        return found
            return None

        leaf = rec(0, self.initial_domains(), True)
        return None if leaf is None else [d.bit_length() - 1 for d in leaf]


def solve(problem: IlpProblem) -> Solution:
    """Optimal assignment; among optima the lexicographically smallest."""
    if not problem.edges:
        return Solution([], 0.0, 0)
    search = _Search(problem)
    target, incumbent = search.best_value()
    picks = search.first_optimal(target, incumbent)
    if picks is None:
        raise InfeasibleError("second pass failed to reach the optimum")
    labels = [problem.labels[i][k] for i, k in enumerate(picks)]
    return Solution(labels, problem.objective_of(labels), search.explored)


def argmax_assignment(problem: IlpProblem) -> list:
    """Per-edge local argmax, ties to the earliest label."""
    out = []
    for i, labs in enumerate(problem.labels):
        best = labs[0]
        for lab in labs[1:]:
            if problem.objective[problem.var(i, lab)] > problem.objective[problem.var(i, best)]:
                best = lab
        out.append(best)
    return out


class Violation(NamedTuple):
    kind: str  # "trans" or "coupling"
    nodes: tuple


def check_consistency(graph: TemporalGraph, table: CompositionTable = STANDARD_TABLE,
                      coupling: bool = True) -> list:
    """Triples whose labels break transitivity or the EE-ET coupling."""
    ee = {}
    for e in graph.ee_edges:
        ee[(e.source, e.target)] = EERelation(e.label)
        ee[(e.target, e.source)] = reverse_ee(e.label)
    nbrs: dict = {}
    for a, b in ee:
        nbrs.setdefault(a, set()).add(b)
    out = []
    for a in sorted(nbrs):
        for b in sorted(nbrs[a]):
            if b <= a:
                continue
            for c in sorted(nbrs[a] & nbrs[b]):
                if c <= b:
                    continue
                for i, j, k in itertools.permutations((a, b, c)):
                    if ee[i, k] not in table(ee[i, j], ee[j, k]):
                        out.append(Violation("trans", (a, b, c)))
                        break
    if coupling:
        by_timex: dict = {}
        for e in graph.et_edges:
            if ETRelation(e.label) is ETRelation.EQUAL:
                by_timex.setdefault(e.timex, []).append(e.event)
        for t in sorted(by_timex):
            for e1, e2 in itertools.combinations(sorted(by_timex[t]), 2):
                lab = ee.get((e1, e2))
                if lab is not None and lab is not EERelation.EQUAL:
                    out.append(Violation("coupling", (e1, e2, t)))
    return out
