"""Trigger gazetteer: token classes that can start or anchor a time expression."""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from .normalize import MONTHS, NUMBER_WORDS, SET_ADVERBS, WEEKDAYS

_RELATIVE = ("yesterday today tomorrow tonight ago last next every each this past coming "
             "previous current earlier later now recently").split()
_TEMPORAL_NOUNS = ("second minute hour day week month year decade century morning afternoon "
                   "evening night noon midnight midday weekend quarter").split()
_TIME_MARKERS = ("am", "pm", "a.m.", "p.m.", "o'clock")
_ORDINALS = ("first second third fourth fifth sixth seventh eighth ninth tenth eleventh "
             "twelfth").split()

_YEARLIKE = re.compile(r"^(1\d|2\d)\d\d$")
_DECADE = re.compile(r"^'?\d{1,3}0s$")
_NUMERIC_DATE = re.compile(r"^\d{1,4}[/\-.]\d{1,2}[/\-.]\d{1,4}$")
_CLOCK = re.compile(r"^\d{1,2}:\d{2}$")
_ORDINAL_NUM = re.compile(r"^\d{1,2}(st|nd|rd|th)$")


def _plural(w):
    return w[:-1] + "ies" if w.endswith("y") and w[-2] not in "aeiou" else w + "s"


@dataclass(frozen=True)
class TriggerGazetteer:
    """Word sets keyed by lowercased token surface; lookups are dict hits."""

    words: dict = field(default_factory=dict)  # surface -> tuple of class names

    @classmethod
    def default(cls) -> "TriggerGazetteer":
        words: dict[str, set] = {}

        def add(w, cls_name):
            words.setdefault(w, set()).add(cls_name)

        for m in MONTHS:
            add(m, "MONTH")
        for d in WEEKDAYS:
            add(d, "WEEKDAY")
            add(d + "s", "WEEKDAY")
        for w in NUMBER_WORDS:
            if " " not in w and w not in ("a", "an"):
                add(w, "NUMWORD")
        for w in _ORDINALS:
            add(w, "ORDINAL")
        for w in _TEMPORAL_NOUNS:
            add(w, "TNOUN")
            add(_plural(w), "TNOUN")
        add("centuries", "TNOUN")
        for w in _RELATIVE:
            add(w, "RELATIVE")
        for w in _TIME_MARKERS:
            add(w, "TIMEMARK")
        for w in SET_ADVERBS:
            add(w, "SETADV")
        return cls({w: tuple(sorted(c)) for w, c in words.items()})

    memo: dict = field(default_factory=dict, compare=False, repr=False)

    def classes(self, surface: str) -> tuple:
        hit = self.memo.get(surface)
        if hit is None:
            if len(self.memo) > 1 << 18:
                self.memo.clear()
            hit = self.memo[surface] = self._classes(surface)
        return hit

    def _classes(self, surface: str) -> tuple:
        low = surface.lower()
        hit = self.words.get(low)
        if hit is not None:
            return hit
        if low[:1].isdigit() or low[:1] == "'":
            if low.isdigit():
                return ("YEARLIKE", "DIGITS") if _YEARLIKE.match(low) else ("DIGITS",)
            if _DECADE.match(low):
                return ("DECADE",)
            if _CLOCK.match(low):
                return ("CLOCK",)
            if _NUMERIC_DATE.match(low):
                return ("NUMDATE",)
            if _ORDINAL_NUM.match(low):
                return ("ORDINAL",)
        return ()

    def is_trigger(self, surface: str) -> bool:
        return bool(self.classes(surface))


_DEFAULT = None


def default_gazetteer() -> TriggerGazetteer:
    global _DEFAULT
    if _DEFAULT is None:
        _DEFAULT = TriggerGazetteer.default()
    return _DEFAULT
