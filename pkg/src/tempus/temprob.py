"""Prior statistics of temporal order between event lemma pairs.

Keys are canonical, ``lemma_a <= lemma_b``, and hold how often an ``a``
event came before or after a ``b`` event in gold data.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable

from .core import EERelation
from .io import atomic_write_text


@dataclass
class TemProbTable:
    counts: dict = field(default_factory=dict)  # (a, b) with a <= b -> [before, after]

    def add(self, lemma1: str, lemma2: str, label: EERelation) -> None:
        label = EERelation(label)
        if label not in (EERelation.BEFORE, EERelation.AFTER):
            return
        if lemma1 <= lemma2:
            key, before = (lemma1, lemma2), label is EERelation.BEFORE
        else:
            key, before = (lemma2, lemma1), label is EERelation.AFTER
        cb, ca = self.counts.get(key, (0, 0))
        self.counts[key] = (cb + 1, ca) if before else (cb, ca + 1)

    def lookup(self, lemma1: str, lemma2: str) -> tuple[int, int]:
        """``(times lemma1 before lemma2, times lemma1 after lemma2)``."""
        if lemma1 <= lemma2:
            return self.counts.get((lemma1, lemma2), (0, 0))
        cb, ca = self.counts.get((lemma2, lemma1), (0, 0))
        return ca, cb

    def p_before(self, lemma1: str, lemma2: str) -> float | None:
        cb, ca = self.lookup(lemma1, lemma2)
        if cb + ca == 0:
            return None
        return cb / (cb + ca)

    def __len__(self):
        return len(self.counts)

    def dumps(self) -> str:
        lines = [f"{a}\t{b}\t{cb}\t{ca}" for (a, b), (cb, ca) in sorted(self.counts.items())]
        return "".join(line + "\n" for line in lines)

    @classmethod
    def loads(cls, text: str, source: str = "<temprob>") -> "TemProbTable":
        counts = {}
        for lineno, line in enumerate(text.splitlines(), 1):
            if not line.strip():
                continue
            parts = line.split("\t")
            if len(parts) != 4:
                raise ValueError(f"{source}:{lineno}: expected 4 tab-separated fields")
            a, b, cb, ca = parts
            if a > b:
                raise ValueError(f"{source}:{lineno}: key ({a}, {b}) is not canonically ordered")
            counts[(a, b)] = (int(cb), int(ca))
        return cls(counts)

    def save(self, path) -> None:
        atomic_write_text(path, self.dumps())

    @classmethod
    def load(cls, path) -> "TemProbTable":
        with open(path, encoding="utf-8") as fh:
            return cls.loads(fh.read(), str(path))


def build_temprob(gold_edges: Iterable[tuple[str, str, EERelation]]) -> TemProbTable:
    """Count Before/After gold edges given as ``(lemma1, lemma2, label)``."""
    table = TemProbTable()
    for l1, l2, label in gold_edges:
        table.add(l1, l2, label)
    return table


def decile_bucket(p: float) -> str:
    k = min(int(p * 10 + 1e-12), 9)
    if k == 9:
        return "[0.9,1.0]"
    return f"[{k / 10:.1f},{(k + 1) / 10:.1f})"


def prior_features(table: TemProbTable, lemma1: str, lemma2: str) -> list[str]:
    cb, ca = table.lookup(lemma1, lemma2)
    total = cb + ca
    if total == 0:
        return ["temprob=UNSEEN_PAIR"]
    return [f"temprob_p_before={decile_bucket(cb / total)}",
            f"temprob_logcount={int(math.log2(total))}"]
