"""Timex extraction (trigger-filtered BIO chunking) and rule-based normalization."""

from __future__ import annotations

import logging

from ..core import Document, TimexMention, TimexType
from ..perceptron import SparseModel
from .baseline import regex_extract
from .chunker import (BIO_LABELS, WINDOW_RADIUS, candidate_tokens, chunk_timex, chunker_features,
                      gold_tags, repair_bio, tags_to_chunks, train_chunker, word_shape)
from .gazetteer import TriggerGazetteer, default_gazetteer
from .normalize import RULES, NoRuleMatched, is_valid_value, normalize

log = logging.getLogger(__name__)


def _mentions(doc: Document, chunks, keep_unnormalized: bool) -> list[TimexMention]:
    out = []
    for span, raw in chunks:
        try:
            ttype, value = normalize(raw, None, doc.dct)
        except NoRuleMatched as exc:
            if not keep_unnormalized:
                log.debug("dropping unnormalizable chunk %r: %s", raw, exc)
                continue
            ttype, value = TimexType.DATE, None
        out.append(TimexMention(len(out), span, ttype, value, raw))
    return out


def annotate_timex(doc: Document, model: SparseModel, gazetteer: TriggerGazetteer | None = None,
                   keep_unnormalized: bool = False, stats: dict | None = None) -> list[TimexMention]:
    """Chunk then normalize. Unnormalizable chunks are dropped unless
    ``keep_unnormalized`` is set, in which case their value is ``None``."""
    return _mentions(doc, chunk_timex(doc, model, gazetteer, stats), keep_unnormalized)


def annotate_timex_rules(doc: Document, keep_unnormalized: bool = False) -> list[TimexMention]:
    """Model-free variant: regex-suite extraction, then the same normalizer."""
    return _mentions(doc, regex_extract(doc.text), keep_unnormalized)


__all__ = [
    "BIO_LABELS", "WINDOW_RADIUS", "RULES", "NoRuleMatched", "TriggerGazetteer", "annotate_timex",
    "annotate_timex_rules", "candidate_tokens", "chunk_timex", "chunker_features", "default_gazetteer",
    "gold_tags", "is_valid_value", "normalize", "regex_extract", "repair_bio", "tags_to_chunks",
    "train_chunker", "word_shape",
]
