"""Naive regular-expression extractor used as the speed baseline.

Every pattern is tried at every token start, the way a pure rule system
checks each position of the text against its whole pattern suite. The
longest match wins and scanning resumes after it.
"""

from __future__ import annotations

import re

from ..core import Span
from .normalize import MONTHS, NUMBER_WORDS, SET_ADVERBS, WEEKDAYS

_M = "(?:" + "|".join(sorted(MONTHS, key=len, reverse=True)) + r")\.?"
_W = "(?:" + "|".join(sorted(WEEKDAYS, key=len, reverse=True)) + r")"
_N = "(?:\\d+|" + "|".join(sorted((k for k in NUMBER_WORDS if " " not in k), key=len, reverse=True)) + "|a few|several)"
_U = r"(?:second|minute|hour|day|week|month|year|decade|centur(?:y|ie))s?"
_B = r"(?![\w'])"

PATTERNS = [
    rf"{_M} \d{{1,2}}(?:st|nd|rd|th)?,? \d{{4}}{_B}",
    rf"\d{{1,2}}(?:st|nd|rd|th)? (?:of )?{_M},? \d{{4}}{_B}",
    rf"{_M},? \d{{4}}{_B}",
    rf"{_M} \d{{1,2}}(?:st|nd|rd|th)?{_B}",
    rf"\d{{4}}-\d{{1,2}}-\d{{1,2}}{_B}",
    rf"\d{{1,2}}/\d{{1,2}}/(?:\d{{4}}|\d{{2}}){_B}",
    rf"(?:the )?\d{{3}}0s{_B}",
    rf"(?:1\d|20)\d\d{_B}",
    rf"(?:the day (?:before yesterday|after tomorrow)|yesterday|today|tomorrow|tonight){_B}",
    rf"(?:this|last|tomorrow|yesterday) (?:morning|afternoon|evening|night){_B}",
    rf"(?:last|next|this) {_W}{_B}",
    rf"{_W}s?{_B}",
    rf"(?:last|next|this|past|coming|previous|current) (?:day|week|month|year|decade){_B}",
    rf"{_N} {_U} (?:ago|earlier|from now){_B}",
    rf"(?:in|within) {_N} {_U}{_B}",
    rf"\d{{1,2}}(?::\d{{2}})? ?(?:am|pm|a\.m\.|p\.m\.)(?!\w)",
    rf"\d{{1,2}}:\d{{2}}{_B}",
    rf"\d{{1,2}} o'clock{_B}",
    rf"(?:noon|midday|midnight){_B}",
    rf"(?:(?:the )?(?:past|last|next|first) )?{_N}[ -]{_U}{_B}",
    rf"(?:every|each) (?:{_W}|day|week|month|year|hour|{_M}){_B}",
    rf"(?:{'|'.join(SET_ADVERBS)}){_B}",
    rf"{_M}{_B}",
]

COMPILED = [re.compile(p, re.IGNORECASE) for p in PATTERNS]
_TOKEN_START = re.compile(r"(?<![\w'])[\w']")


def regex_extract(text: str) -> list[tuple[Span, str]]:
    """Longest-match scan of the whole pattern suite at every token start."""
    out = []
    resume = 0
    for m in _TOKEN_START.finditer(text):
        pos = m.start()
        if pos < resume:
            continue
        best = 0
        for pat in COMPILED:
            hit = pat.match(text, pos)
            if hit is not None and hit.end() - pos > best:
                best = hit.end() - pos
        if best:
            out.append((Span(pos, pos + best), text[pos:pos + best]))
            resume = pos + best
    return out
