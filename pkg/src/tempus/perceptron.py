"""Sparse multiclass averaged perceptron with softmax scoring.

Features are strings hashed to unsigned 64-bit ids with BLAKE2b
(``digest_size=8``, little-endian). Collisions are accepted.

Model file layout (all integers little-endian)::

    magic        8 bytes   b"TMPSPM\\x00\\x01"
    n_labels     u32
    label        u16 length + UTF-8 bytes, repeated n_labels times
    epochs       u32
    seed         i64
    n_examples   u64
    section x2   raw weights, then averaged weights; per label:
                 u64 count, then count * (u64 feature id, f64 weight)
                 sorted by feature id
"""

from __future__ import annotations

import hashlib
import math
import random
import struct
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Mapping, Sequence

from .core import LabelDistribution, TempusError

MAGIC = b"TMPSPM\x00\x01"

FeatureVector = dict  # feature id (int) -> value (float)


class ModelFormatError(TempusError):
    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (at byte offset {offset})")
        self.offset = offset


@lru_cache(maxsize=1 << 20)
def feature_id(name: str) -> int:
    return int.from_bytes(hashlib.blake2b(name.encode("utf-8"), digest_size=8).digest(), "little")


def featurize(features: Iterable[str] | Mapping[str, float]) -> FeatureVector:
    """Hash feature names; indicator features get weight 1.0."""
    fv: dict[int, float] = {}
    if isinstance(features, Mapping):
        items = features.items()
    else:
        items = ((f, 1.0) for f in features)
    for name, value in items:
        fid = feature_id(name)
        fv[fid] = fv.get(fid, 0.0) + float(value)
    return {k: v for k, v in fv.items() if v != 0.0}


@dataclass
class SparseModel:
    labels: tuple
    weights: dict = field(default_factory=dict)  # label -> {fid: w}
    averaged_weights: dict = field(default_factory=dict)
    epochs: int = 0
    seed: int = 0
    n_examples: int = 0

    def __post_init__(self):
        self.labels = tuple(self.labels)
        for lab in self.labels:
            self.weights.setdefault(lab, {})
            self.averaged_weights.setdefault(lab, {})
        if set(self.weights) != set(self.labels) or set(self.averaged_weights) != set(self.labels):
            raise ValueError("weights must share the model's label set")
        self.memo: dict = {}  # inference caches keyed by caller; weights must not change afterwards

    def rows(self) -> dict:
        """Averaged weights regrouped as feature id -> per-label tuple."""
        rows = self.memo.get("rows")
        if rows is None:
            rows = {}
            for li, lab in enumerate(self.labels):
                for f, w in self.averaged_weights[lab].items():
                    rows.setdefault(f, [0.0] * len(self.labels))[li] = w
            rows = {f: tuple(r) for f, r in rows.items()}
            self.memo["rows"] = rows
        return rows


def score(model: SparseModel, fv: FeatureVector) -> dict:
    """Dot product of the averaged weights with ``fv`` for every label."""
    rows = model.rows()
    acc = [0.0] * len(model.labels)
    for f, v in fv.items():
        r = rows.get(f)
        if r is not None:
            for li, w in enumerate(r):
                acc[li] += w * v
    return dict(zip(model.labels, acc))


def predict(model: SparseModel, fv: FeatureVector):
    s = score(model, fv)
    return _argmax(s, model.labels)


def _argmax(scores: Mapping, labels: Sequence):
    best = labels[0]
    for lab in labels[1:]:
        if scores[lab] > scores[best]:
            best = lab
    return best


def softmax(scores: Mapping, labels: Sequence | None = None) -> LabelDistribution:
    labels = tuple(labels) if labels is not None else tuple(scores)
    top = max(scores[l] for l in labels)
    exps = [math.exp(scores[l] - top) for l in labels]
    total = math.fsum(exps)
    return LabelDistribution({l: e / total for l, e in zip(labels, exps)}, labels)


def distribution(model: SparseModel, fv: FeatureVector) -> LabelDistribution:
    return softmax(score(model, fv), model.labels)


class PerceptronTrainer:
    """Online trainer with lazy weight averaging.

    ``averaged = w - u / t`` where ``t`` counts example presentations and
    each update ``d`` made during presentation ``s`` adds ``(s - 1) * d``
    to ``u``. That equals the mean of the weight vector taken after every
    presentation.
    """

    def __init__(self, labels: Sequence):
        self.labels = tuple(labels)
        self.w = {lab: {} for lab in self.labels}
        self.u = {lab: {} for lab in self.labels}
        self.t = 0
        self.updates = 0

    def begin_example(self):
        self.t += 1

    def raw_scores(self, fv: FeatureVector) -> dict:
        return {lab: sum(self.w[lab].get(f, 0.0) * v for f, v in fv.items()) for lab in self.labels}

    def predict(self, fv: FeatureVector):
        return _argmax(self.raw_scores(fv), self.labels)

    def update(self, fv: FeatureVector, gold, predicted, scale: float = 1.0):
        if gold == predicted:
            return
        self.updates += 1
        c = (self.t - 1) * scale
        for lab, sign in ((gold, 1.0), (predicted, -1.0)):
            w, u = self.w[lab], self.u[lab]
            for f, v in fv.items():
                d = sign * scale * v
                w[f] = w.get(f, 0.0) + d
                u[f] = u.get(f, 0.0) + sign * c * v

    def averaged(self) -> dict:
        t = max(self.t, 1)
        avg = {}
        for lab in self.labels:
            w, u = self.w[lab], self.u[lab]
            avg[lab] = {f: w[f] - u.get(f, 0.0) / t for f in w}
        return avg

    def to_model(self, epochs: int = 0, seed: int = 0, n_examples: int = 0) -> SparseModel:
        def clean(d):
            return {lab: {f: v for f, v in ws.items() if v != 0.0} for lab, ws in d.items()}

        return SparseModel(self.labels, clean(self.w), clean(self.averaged()), epochs, seed, n_examples)


def train(examples: Sequence[tuple[FeatureVector, object]], labels: Sequence, epochs: int = 10,
          seed: int = 0, shuffle: bool = True) -> SparseModel:
    """Train a multiclass averaged perceptron.

    >>> m = train([({1: 1.0}, "A"), ({2: 1.0}, "B")], ["A", "B"], epochs=2)
    >>> predict(m, {2: 1.0})
    'B'
    """
    if not examples:
        raise ValueError("cannot train on an empty example list")
    if epochs < 1:
        raise ValueError("epochs must be >= 1")
    labels = tuple(labels)
    label_set = set(labels)
    for _, lab in examples:
        if lab not in label_set:
            raise ValueError(f"example label {lab!r} not in label set")
    trainer = PerceptronTrainer(labels)
    order = list(range(len(examples)))
    rng = random.Random(seed)
    for _ in range(epochs):
        if shuffle:
            rng.shuffle(order)
        for i in order:
            fv, gold = examples[i]
            trainer.begin_example()
            trainer.update(fv, gold, trainer.predict(fv))
    return trainer.to_model(epochs, seed, len(examples))


def dumps(model: SparseModel) -> bytes:
    parts = [MAGIC, struct.pack("<I", len(model.labels))]
    for lab in model.labels:
        raw = str(getattr(lab, "value", lab)).encode("utf-8")
        parts.append(struct.pack("<H", len(raw)) + raw)
    parts.append(struct.pack("<IqQ", model.epochs, model.seed, model.n_examples))
    for section in (model.weights, model.averaged_weights):
        for lab in model.labels:
            items = sorted(section[lab].items())
            parts.append(struct.pack("<Q", len(items)))
            parts.append(b"".join(struct.pack("<Qd", f, w) for f, w in items))
    return b"".join(parts)


def loads(data: bytes, label_type=None) -> SparseModel:
    """Inverse of :func:`dumps`. ``label_type`` converts label strings."""
    off = 0

    def take(fmt):
        nonlocal off
        size = struct.calcsize(fmt)
        if off + size > len(data):
            raise ModelFormatError(f"truncated model file, needed {size} bytes", off)
        vals = struct.unpack_from(fmt, data, off)
        off += size
        return vals

    if data[:8] != MAGIC:
        raise ModelFormatError("bad magic bytes, not a tempus model file", 0)
    off = 8
    (n_labels,) = take("<I")
    if n_labels == 0 or n_labels > 1024:
        raise ModelFormatError(f"implausible label count {n_labels}", off - 4)
    labels = []
    for _ in range(n_labels):
        (ln,) = take("<H")
        start = off
        if off + ln > len(data):
            raise ModelFormatError("truncated label table", off)
        try:
            name = data[off:off + ln].decode("utf-8")
        except UnicodeDecodeError:
            raise ModelFormatError("label is not valid UTF-8", start) from None
        off += ln
        labels.append(label_type(name) if label_type else name)
    epochs, seed, n_examples = take("<IqQ")
    sections = []
    for _ in range(2):
        sec = {}
        for lab in labels:
            (count,) = take("<Q")
            if off + count * 16 > len(data):
                raise ModelFormatError(f"truncated weight table for label {lab!r}", off)
            ws = {}
            prev = -1
            for f, w in struct.iter_unpack("<Qd", data[off:off + count * 16]):
                if f <= prev:
                    raise ModelFormatError("feature ids not strictly increasing", off)
                prev = f
                ws[f] = w
            off += count * 16
            sec[lab] = ws
        sections.append(sec)
    if off != len(data):
        raise ModelFormatError(f"{len(data) - off} trailing bytes", off)
    return SparseModel(tuple(labels), sections[0], sections[1], epochs, seed, n_examples)


def save(model: SparseModel, path) -> None:
    from .io import atomic_write_bytes

    atomic_write_bytes(path, dumps(model))


def load(path, label_type=None) -> SparseModel:
    with open(path, "rb") as fh:
        return loads(fh.read(), label_type)
