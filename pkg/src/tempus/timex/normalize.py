"""Rule-based normalization of time expressions to TIMEX3-style values.

Rules are tried in order and the first match wins. Underspecified fields
use ``X`` placeholders (``199X``, ``XXXX-WXX-1``). Conventions that are
local to this package:

* ``02/03/1998`` is read month first;
* two-digit years below 50 are 20xx, others 19xx;
* a bare weekday resolves to the nearest such day in either direction
  (the DCT day itself when it matches), ``next`` to the nearest strictly
  later one and ``last`` to the nearest strictly earlier one;
* expressions that name a time of day without giving one (``tonight``)
  become ``<date>TXX:XX``.
"""

from __future__ import annotations

import calendar
import datetime as dt
import re
from dataclasses import dataclass
from typing import Callable

from ..core import DCT, TempusError, TimexType


class NoRuleMatched(TempusError):
    """The chunk is not covered by any normalization rule."""


class MissingReference(NoRuleMatched):
    """The matching rule needs a document creation time and none was given."""


MONTHS = {
    "january": 1, "jan": 1, "february": 2, "feb": 2, "march": 3, "mar": 3, "april": 4, "apr": 4,
    "may": 5, "june": 6, "jun": 6, "july": 7, "jul": 7, "august": 8, "aug": 8,
    "september": 9, "sept": 9, "sep": 9, "october": 10, "oct": 10, "november": 11, "nov": 11,
    "december": 12, "dec": 12,
}
WEEKDAYS = {
    "monday": 1, "mon": 1, "tuesday": 2, "tue": 2, "tues": 2, "wednesday": 3, "wed": 3,
    "thursday": 4, "thu": 4, "thur": 4, "thurs": 4, "friday": 5, "fri": 5,
    "saturday": 6, "sat": 6, "sunday": 7, "sun": 7,
}
NUMBER_WORDS = {
    "zero": 0, "one": 1, "two": 2, "three": 3, "four": 4, "five": 5, "six": 6, "seven": 7,
    "eight": 8, "nine": 9, "ten": 10, "eleven": 11, "twelve": 12, "thirteen": 13, "fourteen": 14,
    "fifteen": 15, "sixteen": 16, "seventeen": 17, "eighteen": 18, "nineteen": 19, "twenty": 20,
    "thirty": 30, "forty": 40, "fifty": 50, "sixty": 60, "seventy": 70, "eighty": 80, "ninety": 90,
    "hundred": 100, "a": 1, "an": 1, "a single": 1, "a couple of": 2, "a dozen": 12, "dozen": 12,
}
VAGUE_QUANTITIES = {"a few", "few", "several", "some", "many"}
UNITS = {
    "second": "S", "minute": "MIN", "hour": "H", "day": "D", "week": "W", "month": "M",
    "year": "Y", "decade": "DE", "century": "CE",
}
SET_ADVERBS = {"daily": "day", "weekly": "week", "monthly": "month", "yearly": "year",
               "annually": "year", "hourly": "hour"}

_MONTH = "(?P<month>" + "|".join(sorted(MONTHS, key=len, reverse=True)) + r")\.?"
_WEEKDAY = "(?P<weekday>" + "|".join(sorted(WEEKDAYS, key=len, reverse=True)) + r")\.?"
_NUMWORD = "|".join(sorted((re.escape(k) for k in NUMBER_WORDS), key=len, reverse=True))
_NUM = rf"(?P<num>\d+|(?:{_NUMWORD})(?:-(?:one|two|three|four|five|six|seven|eight|nine))?|a few|few|several)"
_UNIT = r"(?P<unit>second|minute|hour|day|week|month|year|decade|century|centurie)s?"
_DAY = r"(?P<day>\d{1,2})(?:st|nd|rd|th)?"
_YEAR = r"(?P<year>\d{4})"

_VALUE_DATE = r"[\dX]{4}(?:-[\dX]{2}(?:-[\dX]{2})?)?|[\dX]{4}-W[\dX]{2}(?:-[\dX])?"
VALUE_RE = re.compile(
    rf"^(?:(?:{_VALUE_DATE})(?:T[\dX]{{2}}:[\dX]{{2}})?|T[\dX]{{2}}:[\dX]{{2}}"
    r"|P(?:\d+|X)[YMWD]|PT(?:\d+|X)[HMS])$"
)


def is_valid_value(value: str) -> bool:
    """Does ``value`` conform to the value grammar?"""
    return bool(VALUE_RE.match(value))


@dataclass(frozen=True)
class NormalizationRule:
    name: str
    pattern: re.Pattern
    ttype: TimexType
    needs_dct: bool
    handler: Callable


def clean_chunk(text: str) -> str:
    s = text.lower().strip()
    s = s.replace("a.m.", "am").replace("p.m.", "pm").replace("’", "'")
    s = re.sub(r"\s+", " ", s)
    s = re.sub(r"\s*,\s*", ", ", s)
    s = s.strip(" ,;:.!?")
    s = re.sub(r"^(?:the|on|at|in the) (?!day before|day after)", "", s)
    return s


def parse_number(word: str) -> int | None:
    """Numeric value of digits or an English number word; None if vague."""
    word = word.strip()
    if word in VAGUE_QUANTITIES:
        return None
    if word.isdigit():
        return int(word)
    if "-" in word:
        tens, ones = word.split("-", 1)
        return NUMBER_WORDS[tens] + NUMBER_WORDS[ones]
    return NUMBER_WORDS[word]


def _fmt_date(d: dt.date) -> str:
    return f"{d.year:04d}-{d.month:02d}-{d.day:02d}"


def _fmt_week(d: dt.date) -> str:
    y, w, _ = d.isocalendar()
    return f"{y:04d}-W{w:02d}"


def _add_months(year: int, month: int, n: int) -> tuple[int, int]:
    total = year * 12 + (month - 1) + n
    return total // 12, total % 12 + 1


def _checked_date(y: int, m: int, d: int) -> dt.date:
    try:
        return dt.date(y, m, d)
    except ValueError:
        raise NoRuleMatched(f"no such calendar date {y:04d}-{m:02d}-{d:02d}") from None


def _year2(y: str) -> int:
    n = int(y)
    if len(y) == 2:
        return 2000 + n if n < 50 else 1900 + n
    return n


def _time(hour: int, minute: int) -> str:
    if not (0 <= hour <= 23 and 0 <= minute <= 59):
        raise NoRuleMatched("hour or minute out of range")
    return f"T{hour:02d}:{minute:02d}"


# ---- handlers: (match, dct) -> value -------------------------------------------------

def _iso_date(m, dct):
    return _fmt_date(_checked_date(int(m["year"]), int(m["m"]), int(m["d"])))


def _numeric_date(m, dct):
    return _fmt_date(_checked_date(_year2(m["year"]), int(m["m"]), int(m["d"])))


def _full_date(m, dct):
    return _fmt_date(_checked_date(int(m["year"]), MONTHS[m["month"]], int(m["day"])))


def _month_day(m, dct):
    return _fmt_date(_checked_date(dct.date.year, MONTHS[m["month"]], int(m["day"])))


def _month_year(m, dct):
    return f"{int(m['year']):04d}-{MONTHS[m['month']]:02d}"


def _month_only(m, dct):
    return f"{dct.date.year:04d}-{MONTHS[m['month']]:02d}"


def _year_only(m, dct):
    y = int(m["year"])
    if not 1000 <= y <= 2999:
        raise NoRuleMatched("year out of range")
    return f"{y:04d}"


def _decade(m, dct):
    return f"{m['dec']}X"


def _short_decade(m, dct):
    return f"19{m['d']}X"


_DAY_OFFSETS = {"today": 0, "yesterday": -1, "tomorrow": 1,
                "the day before yesterday": -2, "the day after tomorrow": 2}


def _relative_day(m, dct):
    return _fmt_date(dct.date + dt.timedelta(days=_DAY_OFFSETS[m["word"]]))


_PARTS_OF_DAY = {"tonight": 0, "this morning": 0, "this afternoon": 0, "this evening": 0,
                 "last night": -1, "yesterday morning": -1, "yesterday afternoon": -1,
                 "yesterday evening": -1, "tomorrow morning": 1, "tomorrow afternoon": 1,
                 "tomorrow evening": 1, "tomorrow night": 1}


def _part_of_day(m, dct):
    return _fmt_date(dct.date + dt.timedelta(days=_PARTS_OF_DAY[m["word"]])) + "TXX:XX"


def resolve_weekday(ref: dt.date, weekday: int, modifier: str | None) -> dt.date:
    """Date of an ISO ``weekday`` (1=Monday) relative to ``ref``."""
    cur = ref.isoweekday()
    if modifier == "next":
        ahead = (weekday - cur) % 7 or 7
        return ref + dt.timedelta(days=ahead)
    if modifier == "last":
        back = (cur - weekday) % 7 or 7
        return ref - dt.timedelta(days=back)
    ahead = (weekday - cur) % 7
    back = (cur - weekday) % 7
    if ahead == 0:
        return ref
    return ref + dt.timedelta(days=ahead) if ahead <= back else ref - dt.timedelta(days=back)


def _weekday(m, dct):
    mod = m["mod"]
    if mod in ("this", "on", None):
        mod = None
    return _fmt_date(resolve_weekday(dct.date, WEEKDAYS[m["weekday"]], mod))


def _relative_unit(m, dct):
    step = {"last": -1, "previous": -1, "past": -1, "next": 1, "coming": 1, "this": 0, "current": 0}[m["mod"]]
    unit = m["unit"]
    d = dct.date
    if unit == "day":
        return _fmt_date(d + dt.timedelta(days=step))
    if unit == "week":
        return _fmt_week(d + dt.timedelta(weeks=step))
    if unit == "month":
        y, mo = _add_months(d.year, d.month, step)
        return f"{y:04d}-{mo:02d}"
    if unit == "year":
        return f"{d.year + step:04d}"
    if unit == "decade":
        return f"{(d.year // 10 + step):03d}X"
    raise NoRuleMatched(f"no relative rule for unit {unit!r}")


def _shift(dct: DCT, n: int, unit: str) -> str:
    if n is None:
        raise NoRuleMatched("vague quantity in a relative expression")
    d = dct.date
    if unit == "day":
        return _fmt_date(d + dt.timedelta(days=n))
    if unit == "week":
        return _fmt_week(d + dt.timedelta(weeks=n))
    if unit == "month":
        y, mo = _add_months(d.year, d.month, n)
        return f"{y:04d}-{mo:02d}"
    if unit == "year":
        return f"{d.year + n:04d}"
    if unit == "decade":
        return f"{(d.year + 10 * n) // 10:03d}X"
    if unit in ("hour", "minute", "second"):
        if dct.time is None:
            # date-only reference: keep the DCT date, leave the clock unspecified
            return _fmt_date(d) + "TXX:XX"
        base = dt.datetime.combine(d, dct.time)
        delta = {"hour": dt.timedelta(hours=n), "minute": dt.timedelta(minutes=n),
                 "second": dt.timedelta(seconds=n)}[unit]
        when = base + delta
        return _fmt_date(when.date()) + f"T{when.hour:02d}:{when.minute:02d}"
    raise NoRuleMatched(f"no offset rule for unit {unit!r}")


def _unit_name(raw: str) -> str:
    return "century" if raw.startswith("centur") else raw


def _ago(m, dct):
    return _shift(dct, -_n(m), _unit_name(m["unit"]))


def _in(m, dct):
    return _shift(dct, _n(m), _unit_name(m["unit"]))


def _n(m):
    n = parse_number(m["num"])
    if n is None:
        raise NoRuleMatched("vague quantity in a relative expression")
    return n


def _clock(m, dct):
    hour = int(m["h"])
    minute = int(m["mi"] or 0)
    ampm = m["ampm"]
    if ampm:
        if not 1 <= hour <= 12:
            raise NoRuleMatched("12-hour clock value out of range")
        hour = hour % 12 + (12 if ampm == "pm" else 0)
    return _time(hour, minute)


def _named_time(m, dct):
    return {"noon": "T12:00", "midday": "T12:00", "midnight": "T00:00"}[m["word"]]


def _duration(m, dct):
    unit = _unit_name(m["unit"])
    raw = m["num"]
    n = parse_number(raw)
    code = UNITS[unit]
    if code == "DE":
        return f"P{n * 10}Y" if n is not None else "PXY"
    if code == "CE":
        return f"P{n * 100}Y" if n is not None else "PXY"
    amount = "X" if n is None else str(n)
    if code in ("H", "MIN", "S"):
        return f"PT{amount}{'M' if code == 'MIN' else code}"
    return f"P{amount}{code}"


_SET_UNIT = {"day": "XXXX-XX-XX", "week": "XXXX-WXX", "month": "XXXX-XX", "year": "XXXX", "hour": "TXX:00"}


def _every_unit(m, dct):
    unit = m["unit"]
    if unit not in _SET_UNIT:
        raise NoRuleMatched(f"no set rule for unit {unit!r}")
    return _SET_UNIT[unit]


def _every_weekday(m, dct):
    return f"XXXX-WXX-{WEEKDAYS[m['weekday']]}"


def _every_month(m, dct):
    return f"XXXX-{MONTHS[m['month']]:02d}"


def _set_adverb(m, dct):
    return _SET_UNIT[SET_ADVERBS[m["word"]]]


def _rule(name, pattern, ttype, needs_dct, handler):
    return NormalizationRule(name, re.compile(f"^(?:{pattern})$"), ttype, needs_dct, handler)


T = TimexType
RULES: tuple[NormalizationRule, ...] = (
    _rule("iso_date", r"(?P<year>\d{4})-(?P<m>\d{1,2})-(?P<d>\d{1,2})", T.DATE, False, _iso_date),
    _rule("numeric_date", r"(?P<m>\d{1,2})/(?P<d>\d{1,2})/(?P<year>\d{4}|\d{2})", T.DATE, False, _numeric_date),
    _rule("month_day_year", rf"{_MONTH} {_DAY},? {_YEAR}", T.DATE, False, _full_date),
    _rule("day_month_year", rf"{_DAY} (?:of )?{_MONTH},? {_YEAR}", T.DATE, False, _full_date),
    _rule("month_year", rf"{_MONTH},? (?:of )?{_YEAR}", T.DATE, False, _month_year),
    _rule("month_day", rf"{_MONTH} {_DAY}", T.DATE, True, _month_day),
    _rule("day_month", rf"{_DAY} (?:of )?{_MONTH}", T.DATE, True, _month_day),
    _rule("year", _YEAR, T.DATE, False, _year_only),
    _rule("decade", r"(?P<dec>\d{3})0s", T.DATE, False, _decade),
    _rule("short_decade", r"'?(?P<d>\d)0s", T.DATE, False, _short_decade),
    _rule("relative_day", r"(?P<word>today|yesterday|tomorrow|the day before yesterday|the day after tomorrow)",
          T.DATE, True, _relative_day),
    _rule("part_of_day", "(?P<word>" + "|".join(_PARTS_OF_DAY) + ")", T.TIME, True, _part_of_day),
    _rule("weekday", rf"(?:(?P<mod>last|next|this|on) )?{_WEEKDAY}", T.DATE, True, _weekday),
    _rule("relative_unit", rf"(?P<mod>last|previous|past|next|coming|this|current) (?P<unit>day|week|month|year|decade)",
          T.DATE, True, _relative_unit),
    _rule("ago", rf"{_NUM} {_UNIT} (?:ago|earlier|before)", T.DATE, True, _ago),
    _rule("in_offset", rf"(?:in|within) {_NUM} {_UNIT}(?: from now| time)?", T.DATE, True, _in),
    _rule("from_now", rf"{_NUM} {_UNIT} from now", T.DATE, True, _in),
    _rule("clock", r"(?P<h>\d{1,2})(?::(?P<mi>\d{2}))? ?(?P<ampm>am|pm)", T.TIME, False, _clock),
    _rule("clock24", r"(?P<h>\d{1,2}):(?P<mi>\d{2})(?P<ampm>)", T.TIME, False, _clock),
    _rule("oclock", r"(?P<h>\d{1,2})(?P<mi>) o'clock(?: (?P<ampm>am|pm))?", T.TIME, False, _clock),
    _rule("named_time", r"(?P<word>noon|midday|midnight)", T.TIME, False, _named_time),
    _rule("duration", rf"(?:for )?(?:(?:the )?(?:past|last|next|first) )?{_NUM}[ -]{_UNIT}(?: long)?", T.DURATION, False, _duration),
    _rule("every_weekday", rf"(?:every|each) {_WEEKDAY}", T.SET, False, _every_weekday),
    _rule("weekday_plural", r"(?P<weekday>mondays|tuesdays|wednesdays|thursdays|fridays|saturdays|sundays)",
          T.SET, False, lambda m, dct: f"XXXX-WXX-{WEEKDAYS[m['weekday'][:-1]]}"),
    _rule("every_unit", r"(?:every|each) (?P<unit>day|week|month|year|hour)", T.SET, False, _every_unit),
    _rule("every_month", rf"(?:every|each) {_MONTH}", T.SET, False, _every_month),
    _rule("set_adverb", "(?P<word>" + "|".join(SET_ADVERBS) + ")", T.SET, False, _set_adverb),
    _rule("month_only", _MONTH, T.DATE, True, _month_only),
)

_COMBO_SPLIT = re.compile(r"^(?P<a>.+?)(?:,? at |,? on | )(?P<b>[^ ].*)$")


def _try_rules(s: str, hint, dct):
    """First matching rule's ``(type, value)``.

    With a type hint, the first rule of that type wins and the first match
    of any type is the fallback. Returns an exception instance instead of
    raising when nothing applies, so callers can try other readings.
    """
    error = None
    fallback = None
    for rule in RULES:
        m = rule.pattern.match(s)
        if m is None:
            continue
        if rule.needs_dct and dct is None:
            error = error or MissingReference(f"rule {rule.name!r} needs a document creation time")
            continue
        try:
            value = rule.handler(m, dct)
        except NoRuleMatched as exc:
            error = error or exc
            continue
        if hint is None or rule.ttype == hint:
            return rule.ttype, value
        fallback = fallback or (rule.ttype, value)
    return fallback or error


def _combined(s: str, dct):
    """``<date> at <time>`` or ``<time> on <date>`` in either order."""
    for m in re.finditer(r"(?:,? at |,? on |, | )", s):
        left, right = s[:m.start()], s[m.end():]
        if not left or not right:
            continue
        a = _try_rules(left, None, dct)
        b = _try_rules(right, None, dct)
        if not (isinstance(a, tuple) and isinstance(b, tuple)):
            continue
        for (ta, va), (tb, vb) in (((a[0], a[1]), (b[0], b[1])), ((b[0], b[1]), (a[0], a[1]))):
            if ta is T.DATE and tb is T.TIME and re.fullmatch(r"\d{4}-\d{2}-\d{2}", va) and re.fullmatch(r"T\d{2}:\d{2}", vb):
                return T.TIME, va + vb
    return None


def normalize(chunk: str, ttype_hint: TimexType | None = None, dct: DCT | None = None) -> tuple[TimexType, str]:
    """Normalize a chunk; raises :class:`NoRuleMatched` when nothing fits.

    >>> normalize("February 27, 1998")
    (<TimexType.DATE: 'Date'>, '1998-02-27')
    """
    if isinstance(dct, str):
        dct = DCT.parse(dct)
    s = clean_chunk(chunk)
    if not s:
        raise NoRuleMatched("empty chunk")
    result = _try_rules(s, ttype_hint, dct)
    if not isinstance(result, tuple):
        combo = _combined(s, dct)
        if combo is not None:
            return combo
        if isinstance(result, NoRuleMatched):
            raise result
        raise NoRuleMatched(f"no rule matches {chunk!r}")
    ttype, value = result
    assert is_valid_value(value), value
    return ttype, value


def days_in_month(year: int, month: int) -> int:
    return calendar.monthrange(year, month)[1]
