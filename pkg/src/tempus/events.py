"""Main-axis event extraction: binary classification of verb tokens."""

from __future__ import annotations

from typing import Iterable, Sequence

from .core import Document, EventMention, TempusError
from .perceptron import SparseModel, featurize, score, train
from .preprocess import AUX_LEMMAS

EVENT_LABELS = ("NOT_EVENT", "EVENT")
WINDOW = 2
QUOTES = frozenset(['"', "“", "”", "``", "''"])


class NotAVerb(TempusError):
    pass


def _in_quote(doc: Document, i: int) -> bool:
    a, _ = doc.sentences[doc.tokens[i].sentence_index]
    # quotes are tracked within the sentence only
    depth = 0
    for tok in doc.tokens[a:i]:
        if tok.surface in ("“",):
            depth = 1
        elif tok.surface in ("”",):
            depth = 0
        elif tok.surface in QUOTES:
            depth ^= 1
    return depth == 1


def _position_bucket(k: int) -> str:
    if k == 0:
        return "0"
    if k <= 3:
        return "1-3"
    if k <= 7:
        return "4-7"
    return "8+"


def event_feature_names(doc: Document, i: int) -> list[str]:
    tokens = doc.tokens
    tok = tokens[i]
    if tok.pos != "VERB":
        raise NotAVerb(f"token {i} ({tok.surface!r}) is {tok.pos}, not VERB")
    a, b = doc.sentences[tok.sentence_index]
    low = tok.surface.lower()
    feats = ["bias", f"lemma={tok.lemma}", f"w0={low}", f"suf2={low[-2:]}", f"suf3={low[-3:]}"]
    for k in range(-WINDOW, WINDOW + 1):
        if k == 0:
            continue
        j = i + k
        if j < a:
            feats += [f"l[{k}]=<S>", f"p[{k}]=<S>"]
        elif j >= b:
            feats += [f"l[{k}]=</S>", f"p[{k}]=</S>"]
        else:
            feats += [f"l[{k}]={tokens[j].lemma.lower()}", f"p[{k}]={tokens[j].pos}"]
    if a <= i - 1:
        feats.append(f"p[-1]|suf3={tokens[i - 1].pos}|{low[-3:]}")
    if tok.lemma in AUX_LEMMAS:
        feats.append("is_aux")
        if i + 1 < b and tokens[i + 1].pos == "VERB":
            feats.append("aux_before_verb")
    for j in range(max(a, i - 2), i):
        if tokens[j].pos == "VERB" and tokens[j].lemma in AUX_LEMMAS:
            feats.append(f"aux={tokens[j].lemma}")
    # preposition attachment: nearest preposition on each side and the noun it heads
    for direction, rng in (("prev", range(i - 1, a - 1, -1)), ("next", range(i + 1, b))):
        for j in rng:
            if tokens[j].pos == "PREP":
                feats.append(f"{direction}_prep={tokens[j].surface.lower()}")
                for h in range(j + 1, min(b, j + 4)):
                    if tokens[h].pos == "NOUN":
                        feats.append(f"{direction}_pp_head={tokens[h].lemma.lower()}")
                        break
                break
    if _in_quote(doc, i):
        feats.append("in_quote")
    feats.append(f"sent_pos={_position_bucket(i - a)}")
    if i == b - 1 or (i == b - 2 and tokens[b - 1].pos == "PUNCT"):
        feats.append("sent_final")
    return feats


def event_features(doc: Document, i: int) -> dict:
    return featurize(event_feature_names(doc, i))


def verb_indices(doc: Document) -> list[int]:
    return [i for i, t in enumerate(doc.tokens) if t.pos == "VERB"]


def extract_events(doc: Document, model: SparseModel) -> list[EventMention]:
    """Verb tokens the model labels EVENT, in document order."""
    out = []
    for i in verb_indices(doc):
        s = score(model, event_features(doc, i))
        if s["EVENT"] > s["NOT_EVENT"]:
            tok = doc.tokens[i]
            out.append(EventMention(len(out), i, tok.lemma, tok.surface, tok.span))
    return out


def gold_event_mentions(doc: Document, token_indices: Iterable[int]) -> list[EventMention]:
    out = []
    for i in sorted(token_indices):
        tok = doc.tokens[i]
        out.append(EventMention(len(out), i, tok.lemma, tok.surface, tok.span))
    return out


def train_events(docs: Sequence[tuple[Document, Iterable[int]]], epochs: int = 10, seed: int = 0) -> SparseModel:
    """One example per verb token; label EVENT when it is in the gold set."""
    examples = []
    for doc, gold in docs:
        gold = set(gold)
        for i in verb_indices(doc):
            examples.append((event_features(doc, i), "EVENT" if i in gold else "NOT_EVENT"))
    if not examples:
        raise ValueError("training corpus has no verb tokens")
    return train(examples, EVENT_LABELS, epochs=epochs, seed=seed)
