"""Frozen normalization cases for DCT 2018-05-15 (a Tuesday, ISO week 20).

Values were worked out by hand from the calendar, not by running the
normalizer.
"""

GOLDEN_DCT = "2018-05-15"

# (expression, type, value)
GOLDEN = [
    # Date: absolute
    ("February 27, 1998", "Date", "1998-02-27"),
    ("27 February 1998", "Date", "1998-02-27"),
    ("Feb. 27, 1998", "Date", "1998-02-27"),
    ("1998-02-27", "Date", "1998-02-27"),
    ("02/27/1998", "Date", "1998-02-27"),
    ("2/27/98", "Date", "1998-02-27"),
    ("March 1998", "Date", "1998-03"),
    ("1998", "Date", "1998"),
    ("the 1990s", "Date", "199X"),
    ("the '90s", "Date", "199X"),
    # Date: DCT-relative
    ("March", "Date", "2018-03"),
    ("March 3", "Date", "2018-03-03"),
    ("the 3rd of March", "Date", "2018-03-03"),
    ("today", "Date", "2018-05-15"),
    ("yesterday", "Date", "2018-05-14"),
    ("tomorrow", "Date", "2018-05-16"),
    ("the day after tomorrow", "Date", "2018-05-17"),
    ("the day before yesterday", "Date", "2018-05-13"),
    ("Monday", "Date", "2018-05-14"),
    ("Tuesday", "Date", "2018-05-15"),
    ("Friday", "Date", "2018-05-18"),
    ("on Sunday", "Date", "2018-05-13"),
    ("this Thursday", "Date", "2018-05-17"),
    ("next Monday", "Date", "2018-05-21"),
    ("next Tuesday", "Date", "2018-05-22"),
    ("last Friday", "Date", "2018-05-11"),
    ("last Tuesday", "Date", "2018-05-08"),
    ("last week", "Date", "2018-W19"),
    ("this week", "Date", "2018-W20"),
    ("next week", "Date", "2018-W21"),
    ("last month", "Date", "2018-04"),
    ("next month", "Date", "2018-06"),
    ("last year", "Date", "2017"),
    ("next year", "Date", "2019"),
    ("this decade", "Date", "201X"),
    ("three days ago", "Date", "2018-05-12"),
    ("twenty-one days ago", "Date", "2018-04-24"),
    ("two weeks ago", "Date", "2018-W18"),
    ("a month ago", "Date", "2018-04"),
    ("5 years ago", "Date", "2013"),
    ("in two days", "Date", "2018-05-17"),
    ("within 3 weeks", "Date", "2018-W23"),
    ("ten months from now", "Date", "2019-03"),
    # Time
    ("8 am", "Time", "T08:00"),
    ("8 a.m.", "Time", "T08:00"),
    ("8:30 pm", "Time", "T20:30"),
    ("12 am", "Time", "T00:00"),
    ("12 pm", "Time", "T12:00"),
    ("14:45", "Time", "T14:45"),
    ("9 o'clock", "Time", "T09:00"),
    ("noon", "Time", "T12:00"),
    ("midnight", "Time", "T00:00"),
    ("tonight", "Time", "2018-05-15TXX:XX"),
    ("last night", "Time", "2018-05-14TXX:XX"),
    ("tomorrow morning", "Time", "2018-05-16TXX:XX"),
    ("February 27, 1998 at 8 am", "Time", "1998-02-27T08:00"),
    ("in 2 hours", "Date", "2018-05-15TXX:XX"),
    # Duration
    ("3 years", "Duration", "P3Y"),
    ("three years", "Duration", "P3Y"),
    ("two weeks", "Duration", "P2W"),
    ("a month", "Duration", "P1M"),
    ("5 hours", "Duration", "PT5H"),
    ("30 minutes", "Duration", "PT30M"),
    ("10 seconds", "Duration", "PT10S"),
    ("a decade", "Duration", "P10Y"),
    ("two centuries", "Duration", "P200Y"),
    ("several days", "Duration", "PXD"),
    ("a few weeks", "Duration", "PXW"),
    ("for six months", "Duration", "P6M"),
    ("the past three years", "Duration", "P3Y"),
    ("24-hour", "Duration", "PT24H"),
    ("twenty-five years", "Duration", "P25Y"),
    ("a dozen years", "Duration", "P12Y"),
    # Set
    ("every Monday", "Set", "XXXX-WXX-1"),
    ("each Friday", "Set", "XXXX-WXX-5"),
    ("Sundays", "Set", "XXXX-WXX-7"),
    ("every day", "Set", "XXXX-XX-XX"),
    ("every week", "Set", "XXXX-WXX"),
    ("every month", "Set", "XXXX-XX"),
    ("every year", "Set", "XXXX"),
    ("every hour", "Set", "TXX:00"),
    ("daily", "Set", "XXXX-XX-XX"),
    ("weekly", "Set", "XXXX-WXX"),
    ("annually", "Set", "XXXX"),
    ("every March", "Set", "XXXX-03"),
]
