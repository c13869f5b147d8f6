"""Tokenizer, sentence splitter, lemmatizer and coarse POS tagger.

Conventions:

* whitespace separates tokens and is never part of one;
* punctuation is split off as single-character tokens, except inside
  numbers (``14:30``, ``02/03/1998``, ``10.5``) and dotted abbreviations
  (``a.m.``, ``U.S.``);
* ``Feb.`` is two tokens, ``Feb`` and ``.``; the sentence splitter knows
  not to break after it;
* word-internal apostrophes and hyphens stay attached (``don't``,
  ``well-known``).
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field, replace
from functools import lru_cache
from importlib import resources
from typing import Iterable, Sequence

from .core import DCT, Document, Span, Token

TOKEN_RE = re.compile(
    r"""
    (?:[A-Za-z]\.){2,}                  # dotted abbreviations: a.m., U.S.
  | \d+(?:[:/.\-]\d+)+                  # 14:30, 02/03/1998, 1998-02-27, 10.5
  | \d+(?:st|nd|rd|th|s)(?![A-Za-z])    # 27th, 1990s
  | \d+
  | [^\W\d_]+(?:['’\-][^\W\d_]+)*  # words
  | \S                                  # any other single character
    """,
    re.VERBOSE,
)

ABBREVIATIONS = frozenset(
    """jan feb mar apr jun jul aug sep sept oct nov dec mon tue tues wed thu thur thurs fri sat sun
    mr mrs ms dr prof st jr sr co corp inc ltd gen gov sen rep lt col sgt capt vs etc no approx""".split()
)
TERMINALS = frozenset(".!?")
CLOSERS = frozenset(['"', "'", ")", "]", "”", "’"])

AUX_LEMMAS = frozenset("be have do will would can could may might shall should must".split())
MONTH_WORDS = frozenset(
    "january february march april may june july august september october november december".split()
)


def tokenize(text: str) -> list[Token]:
    """Split ``text`` into tokens carrying spans and surfaces only."""
    return [Token(Span(m.start(), m.end()), m.group()) for m in TOKEN_RE.finditer(text)]


def _is_abbreviation(tok: Token) -> bool:
    return tok.surface.lower() in ABBREVIATIONS


def split_sentences(tokens: Sequence[Token], text: str | None = None) -> list[tuple[int, int]]:
    """Return ``[start, end)`` token ranges, one per sentence."""
    if not tokens:
        return []
    ranges = []
    start = 0
    i = 0
    n = len(tokens)
    while i < n:
        tok = tokens[i]
        if tok.surface in TERMINALS and not _guarded(tokens, i):
            j = i + 1
            # trailing closers stick to the sentence they close: ... win."
            while j < n and tokens[j].surface in CLOSERS and tokens[j].span.start == tokens[j - 1].span.end:
                j += 1
            if j < n:
                ranges.append((start, j))
                start = j
            i = j
            continue
        i += 1
    ranges.append((start, n))
    return ranges


def _guarded(tokens: Sequence[Token], i: int) -> bool:
    """True when the period at ``i`` does not end a sentence."""
    if tokens[i].surface != ".":
        return False
    if i == 0:
        return False
    prev = tokens[i - 1]
    nxt = tokens[i + 1] if i + 1 < len(tokens) else None
    if _is_abbreviation(prev) and prev.span.end == tokens[i].span.start:
        # "Feb. 27" continues; "... Inc. The" is ambiguous, keep it joined
        # only when the next token is not capitalised or is a number
        if nxt is None:
            return False
        return prev.surface.lower() in _DATE_ABBREVIATIONS or not nxt.surface[:1].isupper() or nxt.surface[:1].isdigit()
    # numeric date pattern: "27. February 1998" / "27. 02"
    if prev.surface.isdigit() and len(prev.surface) <= 2 and nxt is not None:
        if nxt.surface.isdigit() or nxt.surface.lower() in MONTH_WORDS:
            return True
    return False


_DATE_ABBREVIATIONS = frozenset(
    "jan feb mar apr jun jul aug sep sept oct nov dec mon tue tues wed thu thur thurs fri sat sun mr mrs ms dr prof st".split()
)


@dataclass(frozen=True)
class Lexicon:
    """Word list with fallback morphology. Lookups never fail."""

    entries: dict = field(default_factory=dict)
    irregular_verbs: dict = field(default_factory=dict)

    @classmethod
    def load(cls, path=None) -> "Lexicon":
        if path is None:
            raw = resources.files("tempus").joinpath("data/lexicon.tsv").read_text(encoding="utf-8")
        else:
            with open(path, encoding="utf-8") as fh:
                raw = fh.read()
        entries = {}
        for lineno, line in enumerate(raw.splitlines(), 1):
            if not line.strip() or line.startswith("#"):
                continue
            parts = line.split("\t")
            if len(parts) != 3:
                raise ValueError(f"{path or 'lexicon.tsv'}:{lineno}: expected surface<TAB>lemma<TAB>POS")
            entries[parts[0]] = (parts[1], parts[2])
        irregular = {s: l for s, (l, p) in entries.items() if p == "VERB" and not s.startswith(l)}
        return cls(entries, irregular)

    def lookup(self, word: str) -> tuple[str, str]:
        """``(lemma, pos)`` for a word; suffix rules cover unknown words."""
        low = word.lower()
        hit = self.entries.get(low)
        if hit is not None:
            return hit
        if any(c.isdigit() for c in low):
            return low, "NUM"
        if not any(c.isalpha() for c in low):
            return low, "PUNCT" if not low.isalnum() else "OTHER"
        if word[:1].isupper():
            return word, "NOUN"
        return _suffix_rules(low)


def _suffix_rules(low: str) -> tuple[str, str]:
    if len(low) > 4 and low.endswith("ied"):
        return low[:-3] + "y", "VERB"
    if len(low) > 4 and low.endswith("ed"):
        return _restore_stem(low[:-2]), "VERB"
    if len(low) > 5 and low.endswith("ing"):
        return _restore_stem(low[:-3]), "VERB"
    if len(low) > 4 and low.endswith("ly"):
        return low, "ADV"
    if len(low) > 4 and low.endswith("ies"):
        return low[:-3] + "y", "NOUN"
    if len(low) > 3 and low.endswith("s") and not low.endswith("ss"):
        return low[:-1], "NOUN"
    return low, "NOUN"


_E_ENDINGS = ("at", "iz", "ov", "ud", "ag", "uc", "ur", "ic", "rg", "ng", "dg", "rv", "lv")


def _restore_stem(stem: str) -> str:
    if len(stem) >= 3 and stem[-1] == stem[-2] and stem[-1] not in "lsz":
        return stem[:-1]
    if stem.endswith(_E_ENDINGS) and not stem.endswith("ing"):
        return stem + "e"
    return stem


@lru_cache(maxsize=1)
def default_lexicon() -> Lexicon:
    return Lexicon.load()


_NUMERIC_NEIGHBOURS = frozenset(["am", "pm", "a.m.", "p.m."])


def pos_and_lemma(tokens: Sequence[Token], lexicon: Lexicon | None = None) -> list[Token]:
    """Attach lemma and coarse POS to every token.

    Two contextual fixes on top of the lexicon: ``am``/``pm`` after a number
    are OTHER, and a verb base form right after a determiner is a NOUN
    (``the plan``).
    """
    lexicon = lexicon or default_lexicon()
    out = []
    prev_pos = None
    prev_surface = ""
    for tok in tokens:
        s = tok.surface
        if not any(c.isalnum() for c in s):
            lemma, pos = s, "PUNCT"
        else:
            lemma, pos = lexicon.lookup(s)
            low = s.lower()
            if low in _NUMERIC_NEIGHBOURS and prev_pos == "NUM":
                lemma, pos = low, "OTHER"
            elif low in ("a.m.", "p.m."):
                lemma, pos = low, "OTHER"
            elif pos == "VERB" and prev_pos in ("DET", "ADJ") and lemma not in AUX_LEMMAS \
                    and (low == lemma or low == lemma + "s") and prev_surface.lower() != "to":
                pos = "NOUN"
        out.append(replace(tok, lemma=lemma or s, pos=pos))
        prev_pos = pos
        prev_surface = s
    return out


def preprocess(text: str, dct: DCT | str | None = None, doc_id: str = "",
               lexicon: Lexicon | None = None) -> Document:
    """Run tokenization, sentence splitting and tagging; build a Document."""
    if isinstance(dct, str):
        dct = DCT.parse(dct)
    tokens = tokenize(text)
    sentences = split_sentences(tokens)
    tagged = pos_and_lemma(tokens, lexicon)
    final = []
    for si, (a, b) in enumerate(sentences):
        for tok in tagged[a:b]:
            final.append(replace(tok, sentence_index=si))
    return Document(text, tuple(final), tuple(sentences), dct, doc_id)


def detokenize_check(text: str, tokens: Iterable[Token]) -> bool:
    """True when tokens plus the skipped whitespace rebuild ``text``."""
    pos = 0
    for tok in tokens:
        gap = text[pos:tok.span.start]
        if gap.strip() or text[tok.span.start:tok.span.end] != tok.surface:
            return False
        pos = tok.span.end
    return not text[pos:].strip()
