"""BIO chunking of time expressions with a trigger prefilter.

Only tokens within ``WINDOW_RADIUS`` tokens of a gazetteer trigger (same
sentence) are sent to the classifier; every other token is tagged O
without a classifier call. Decoding is greedy left to right and uses the
previous tag as a feature.
"""

from __future__ import annotations

import re
from functools import lru_cache
from typing import Iterable, Sequence

from ..core import Document, Span
from ..perceptron import SparseModel, featurize, train
from .gazetteer import TriggerGazetteer, default_gazetteer

BIO_LABELS = ("O", "B", "I")  # O first: ties decode to O
WINDOW_RADIUS = 1
FEATURE_WINDOW = 2

_SHAPE_RUNS = re.compile(r"([Xx])\1+")


@lru_cache(maxsize=1 << 16)
def word_shape(surface: str) -> str:
    """Digits stay one ``d`` per digit; letter runs collapse (``February`` -> ``Xx``)."""
    out = []
    for c in surface:
        if c.isdigit():
            out.append("d")
        elif c.isupper():
            out.append("X")
        elif c.isalpha():
            out.append("x")
        else:
            out.append(c)
    return _SHAPE_RUNS.sub(r"\1", "".join(out))


def candidate_tokens(doc: Document, gazetteer: TriggerGazetteer) -> list[bool]:
    """Mask of tokens inside a trigger window."""
    n = len(doc.tokens)
    mask = [False] * n
    for a, b in doc.sentences:
        for i in range(a, b):
            if gazetteer.is_trigger(doc.tokens[i].surface):
                lo = max(a, i - WINDOW_RADIUS)
                hi = min(b, i + WINDOW_RADIUS + 1)
                for j in range(lo, hi):
                    mask[j] = True
    return mask


def _token_block(k: int, tok, marker: str, gazetteer: TriggerGazetteer) -> tuple[list[str], tuple]:
    """Features of the window token at offset ``k``; ``tok`` is None past a sentence edge."""
    if tok is None:
        return [f"w[{k}]={marker}", f"p[{k}]={marker}"], (marker,)
    low = tok.surface.lower()
    feats = [f"w[{k}]={low}", f"p[{k}]={tok.pos}"]
    if k == 0:
        feats += ["bias", f"shape={word_shape(tok.surface)}"]
        if tok.surface[:1].isupper():
            feats.append("cap")
    else:
        feats.append(f"s[{k}]={word_shape(tok.surface)}")
    if abs(k) <= 1:
        feats.append(f"l[{k}]={tok.lemma.lower()}")
    classes = gazetteer.classes(tok.surface) or ("NONE",)
    feats += [f"gaz[{k}]={c}" for c in classes]
    return feats, classes


def _pair_block(k: int, left: tuple, right: tuple) -> list[str]:
    return [f"gaz[{k}]|gaz[{k + 1}]={c1}|{c2}" for c1 in left for c2 in right]


def _prev_block(prev_tag: str, low: str, classes: tuple) -> list[str]:
    return [f"prev={prev_tag}", f"prev|w0={prev_tag}|{low}"] + [f"prev|gaz0={prev_tag}|{c}" for c in classes]


def _window(doc: Document, i: int):
    """``(k, token or None, edge marker)`` for every offset of the feature window."""
    a, b = doc.sentences[doc.tokens[i].sentence_index]
    for k in range(-FEATURE_WINDOW, FEATURE_WINDOW + 1):
        j = i + k
        if j < a:
            yield k, None, "<S>"
        elif j >= b:
            yield k, None, "</S>"
        else:
            yield k, doc.tokens[j], ""


def chunker_feature_names(doc: Document, i: int, gazetteer: TriggerGazetteer,
                          prev_tag: str | None = None) -> list[str]:
    feats = []
    gaz = {}
    for k, tok, marker in _window(doc, i):
        names, gaz[k] = _token_block(k, tok, marker, gazetteer)
        feats += names
    for k in (-1, 0):
        feats += _pair_block(k, gaz[k], gaz[k + 1])
    if prev_tag is not None:
        feats += _prev_block(prev_tag, doc.tokens[i].surface.lower(), gaz[0])
    return feats


class _BlockScorer:
    """Linear scores assembled from memoized per-block partial sums.

    The chunker score is a sum over feature blocks, and each block depends
    on a small key (one window token, a class pair, the previous tag), so
    partial sums are cached per key. The result equals scoring the full
    feature vector up to floating-point summation order.
    """

    def __init__(self, model: SparseModel, gazetteer: TriggerGazetteer):
        if tuple(model.labels) != BIO_LABELS:
            raise ValueError(f"chunker models have labels {BIO_LABELS}")
        self.rows = model.rows()
        self.gazetteer = gazetteer
        self.tokens: dict = {}
        self.pairs: dict = {}
        self.prevs: dict = {}
        self.edges = {marker: self._entry(None, marker) for marker in ("<S>", "</S>")}

    def _vec(self, names) -> tuple:
        acc = [0.0, 0.0, 0.0]
        for fid, value in featurize(names).items():
            r = self.rows.get(fid)
            if r is not None:
                for li, w in enumerate(r):
                    acc[li] += w * value
        return tuple(acc)

    def _entry(self, tok, marker=""):
        """Per-offset partial sums of one token, plus its gazetteer classes."""
        vecs, classes = [], None
        for k in range(-FEATURE_WINDOW, FEATURE_WINDOW + 1):
            names, classes = _token_block(k, tok, marker, self.gazetteer)
            vecs.append(self._vec(names))
        return tuple(vecs), classes

    def entry(self, tok):
        key = (tok.surface, tok.pos, tok.lemma)
        hit = self.tokens.get(key)
        if hit is None:
            hit = self.tokens[key] = self._entry(tok)
        return hit

    def tag_sentence(self, tokens, a: int, b: int, mask) -> tuple[list, int]:
        """Greedy BIO tags for tokens ``[a, b)`` and the number of scored tokens."""
        w = FEATURE_WINDOW
        start, end = self.edges["<S>"], self.edges["</S>"]
        ents = {}
        tags = ["O"] * (b - a)
        prev = "O"
        calls = 0
        for i in range(a, b):
            if not mask[i]:
                prev = "O"
                continue
            calls += 1
            s0 = s1 = s2 = 0.0
            window = []
            for k in range(-w, w + 1):
                j = i + k
                if j < a:
                    e = start
                elif j >= b:
                    e = end
                else:
                    e = ents.get(j)
                    if e is None:
                        e = ents[j] = self.entry(tokens[j])
                v = e[0][k + w]
                s0 += v[0]
                s1 += v[1]
                s2 += v[2]
                window.append(e[1])
            for k in (-1, 0):
                key = (k, window[k + w], window[k + w + 1])
                v = self.pairs.get(key)
                if v is None:
                    v = self.pairs[key] = self._vec(_pair_block(k, key[1], key[2]))
                s0 += v[0]
                s1 += v[1]
                s2 += v[2]
            low = tokens[i].surface.lower()
            key = (prev, low, window[w])
            v = self.prevs.get(key)
            if v is None:
                v = self.prevs[key] = self._vec(_prev_block(prev, low, window[w]))
            s0 += v[0]
            s1 += v[1]
            s2 += v[2]
            # ties resolve in label order O, B, I
            best = "O"
            top = s0
            if s1 > top:
                best, top = "B", s1
            if s2 > top:
                best = "I"
            tags[i - a] = best
            prev = best
        return tags, calls


_MAX_MEMO = 1 << 18


def _scorer(model: SparseModel, gazetteer: TriggerGazetteer) -> _BlockScorer:
    scorer = model.memo.get("chunker")
    if scorer is None or scorer.gazetteer is not gazetteer or len(scorer.tokens) > _MAX_MEMO:
        scorer = model.memo["chunker"] = _BlockScorer(model, gazetteer)
    return scorer


def chunker_features(doc: Document, i: int, gazetteer: TriggerGazetteer | None = None,
                     prev_tag: str | None = None) -> dict:
    return featurize(chunker_feature_names(doc, i, gazetteer or default_gazetteer(), prev_tag))


def repair_bio(tags: Sequence[str]) -> list[str]:
    """Turn any I that follows O (or starts the sequence) into B."""
    out = []
    prev = "O"
    for t in tags:
        if t == "I" and prev == "O":
            t = "B"
        out.append(t)
        prev = t
    return out


def tags_to_chunks(tags: Sequence[str]) -> list[tuple[int, int]]:
    """Token ranges ``[i, j)`` of maximal B I* runs."""
    chunks = []
    start = None
    for i, t in enumerate(tags):
        if t == "B":
            if start is not None:
                chunks.append((start, i))
            start = i
        elif t == "O":
            if start is not None:
                chunks.append((start, i))
            start = None
    if start is not None:
        chunks.append((start, len(tags)))
    return chunks


def gold_tags(doc: Document, spans: Iterable[Span]) -> list[str]:
    tags = ["O"] * len(doc.tokens)
    for span in spans:
        i, j = doc.token_range(span)
        tags[i] = "B"
        for k in range(i + 1, j):
            tags[k] = "I"
    return tags


def tag_document(doc: Document, model: SparseModel, gazetteer: TriggerGazetteer | None = None,
                 stats: dict | None = None) -> list[str]:
    gazetteer = gazetteer or default_gazetteer()
    mask = candidate_tokens(doc, gazetteer)
    tags = ["O"] * len(doc.tokens)
    calls = 0
    scorer = _scorer(model, gazetteer)
    for a, b in doc.sentences:
        sent_tags, n = scorer.tag_sentence(doc.tokens, a, b, mask)
        tags[a:b] = repair_bio(sent_tags)
        calls += n
    if stats is not None:
        stats["classifier_calls"] = stats.get("classifier_calls", 0) + calls
        stats["tokens"] = stats.get("tokens", 0) + len(doc.tokens)
    return tags


def chunk_timex(doc: Document, model: SparseModel, gazetteer: TriggerGazetteer | None = None,
                stats: dict | None = None) -> list[tuple[Span, str]]:
    """Extract ``(span, raw text)`` timex chunks from a preprocessed document."""
    tags = tag_document(doc, model, gazetteer, stats)
    out = []
    for i, j in tags_to_chunks(tags):
        span = Span(doc.tokens[i].span.start, doc.tokens[j - 1].span.end)
        out.append((span, doc.text[span.start:span.end]))
    return out


def train_chunker(docs: Sequence[tuple[Document, Sequence[Span]]], epochs: int = 10, seed: int = 0,
                  gazetteer: TriggerGazetteer | None = None) -> SparseModel:
    """Averaged perceptron over trigger-window tokens, gold previous tag as feature."""
    gazetteer = gazetteer or default_gazetteer()
    examples = []
    for doc, spans in docs:
        tags = gold_tags(doc, spans)
        mask = candidate_tokens(doc, gazetteer)
        for a, b in doc.sentences:
            prev = "O"
            for i in range(a, b):
                if mask[i]:
                    examples.append((chunker_features(doc, i, gazetteer, prev), tags[i]))
                prev = tags[i] if mask[i] else "O"
    if not examples:
        raise ValueError("no trigger-window tokens in the training corpus")
    return train(examples, BIO_LABELS, epochs=epochs, seed=seed)
