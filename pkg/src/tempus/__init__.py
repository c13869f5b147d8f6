"""Temporal information extraction: time expressions, events and consistent temporal graphs."""

from .core import (DCT, Document, EERelation, ETRelation, EventMention, LabelDistribution, TemporalGraph,
                   TempusError, TimexMention, TimexType)

__version__ = "0.1.0"

__all__ = [
    "DCT", "Document", "EERelation", "ETRelation", "EventMention", "LabelDistribution", "TemporalGraph",
    "TempusError", "TimexMention", "TimexType", "__version__",
]
