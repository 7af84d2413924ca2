"""Serializable gradient-log data model, persistence, and summaries.

On disk a log is UTF-8 JSON:

    {"schema_version": 1,
     "meta": {"hidden_size", "batch_size", "horizon", "record_interval",
              "vocab", "optimizer", "learning_rate", "init_scale",
              "seed", "corpus_id"},
     "records": [{"batch_index", "char_offset", "true_labels",
                  "predicted_labels", "magnitudes", "max_gradient",
                  "batch_loss"}, ...]}

`magnitudes` is origin-major and ragged: entry [t][d] is the magnitude of
the contribution that the loss at origin t made at step j = t - d, so the
inner list for origin t has min(horizon, t) + 1 entries. Scalars are
serialized as decimal numbers that round-trip exactly.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

from .errors import LogFormatError

SCHEMA_VERSION = 1

_META_FIELDS = ("hidden_size", "batch_size", "horizon", "record_interval",
                "vocab", "optimizer", "learning_rate", "init_scale",
                "seed", "corpus_id")
_RECORD_FIELDS = ("batch_index", "char_offset", "true_labels",
                  "predicted_labels", "magnitudes", "max_gradient",
                  "batch_loss")


@dataclass(frozen=True)
class RunMeta:
    """Run-level settings; fixed for every record in a log."""

    hidden_size: int
    batch_size: int
    horizon: int
    record_interval: int
    vocab: str
    optimizer: str
    learning_rate: float
    init_scale: float
    seed: int
    corpus_id: str
    schema_version: int = SCHEMA_VERSION


@dataclass(frozen=True)
class BatchRecord:
    """One recorded batch: labels, predictions, and itemized magnitudes."""

    batch_index: int
    char_offset: int
    true_labels: str
    predicted_labels: str
    magnitudes: list[list[float]]
    max_gradient: float
    batch_loss: float

    @property
    def n(self) -> int:
        return len(self.true_labels)

    @property
    def correct(self) -> list[bool]:
        return [a == b for a, b in zip(self.true_labels, self.predicted_labels)]

    @property
    def accuracy(self) -> float:
        return sum(self.correct) / self.n

    def magnitude_at(self, t: int, j: int) -> float:
        """Magnitude of origin t's contribution at step j (d = t - j)."""
        return self.magnitudes[t][t - j]


@dataclass
class GradientLog:
    meta: RunMeta
    records: list[BatchRecord] = field(default_factory=list)

    def append_record(self, record: BatchRecord) -> "GradientLog":
        last = self.records[-1].batch_index if self.records else -1
        if record.batch_index <= last:
            raise LogFormatError(
                f"batch_index {record.batch_index} not greater than last {last}")
        _validate_record_shape(record, self.meta,
                               path=f"records[{len(self.records)}]")
        self.records.append(record)
        return self


@dataclass(frozen=True)
class LogSummary:
    record_count: int
    global_max_gradient: float
    per_record_max: list[float]
    accuracy_per_record: list[float]


def summary(log: GradientLog) -> LogSummary:
    """Overview data: per-record max gradient and prediction accuracy."""
    if not log.records:
        raise ValueError("empty log")
    per_max = [r.max_gradient for r in log.records]
    return LogSummary(
        record_count=len(log.records),
        global_max_gradient=max(per_max),
        per_record_max=per_max,
        accuracy_per_record=[r.accuracy for r in log.records],
    )


def append_record(log: GradientLog, record: BatchRecord) -> GradientLog:
    return log.append_record(record)


# ---------------------------------------------------------------------------
# serialization


def serialize(log: GradientLog) -> bytes:
    """UTF-8 JSON bytes with the normative field names and order."""
    m = log.meta
    doc = {
        "schema_version": int(m.schema_version),
        "meta": {
            "hidden_size": int(m.hidden_size),
            "batch_size": int(m.batch_size),
            "horizon": int(m.horizon),
            "record_interval": int(m.record_interval),
            "vocab": m.vocab,
            "optimizer": m.optimizer,
            "learning_rate": float(m.learning_rate),
            "init_scale": float(m.init_scale),
            "seed": int(m.seed),
            "corpus_id": m.corpus_id,
        },
        "records": [
            {
                "batch_index": int(r.batch_index),
                "char_offset": int(r.char_offset),
                "true_labels": r.true_labels,
                "predicted_labels": r.predicted_labels,
                "magnitudes": [[float(v) for v in row] for row in r.magnitudes],
                "max_gradient": float(r.max_gradient),
                "batch_loss": float(r.batch_loss),
            }
            for r in log.records
        ],
    }
    return json.dumps(doc, ensure_ascii=False, allow_nan=False,
                      separators=(",", ":")).encode("utf-8")


def deserialize(data: bytes) -> GradientLog:
    """Parse and fully validate; errors name the offending JSON path."""
    try:
        doc = json.loads(data.decode("utf-8"))
    except (UnicodeDecodeError, json.JSONDecodeError) as exc:
        raise LogFormatError(f"not valid UTF-8 JSON: {exc}") from None

    _expect(isinstance(doc, dict), "expected a JSON object", "$")
    version = _require(doc, "schema_version", "$")
    _expect(isinstance(version, int) and not isinstance(version, bool),
            f"expected integer, got {_typename(version)}", "schema_version")
    if version != SCHEMA_VERSION:
        raise LogFormatError(
            f"unsupported schema_version {version}, expected {SCHEMA_VERSION}",
            path="schema_version")

    meta_doc = _require(doc, "meta", "$")
    _expect(isinstance(meta_doc, dict), "expected a JSON object", "meta")
    meta = RunMeta(
        hidden_size=_int_field(meta_doc, "hidden_size", "meta"),
        batch_size=_int_field(meta_doc, "batch_size", "meta"),
        horizon=_int_field(meta_doc, "horizon", "meta"),
        record_interval=_int_field(meta_doc, "record_interval", "meta"),
        vocab=_str_field(meta_doc, "vocab", "meta"),
        optimizer=_str_field(meta_doc, "optimizer", "meta"),
        learning_rate=_num_field(meta_doc, "learning_rate", "meta"),
        init_scale=_num_field(meta_doc, "init_scale", "meta"),
        seed=_int_field(meta_doc, "seed", "meta"),
        corpus_id=_str_field(meta_doc, "corpus_id", "meta"),
    )
    _expect(meta.batch_size >= 1, "batch_size must be >= 1", "meta.batch_size")
    _expect(meta.horizon >= 0, "horizon must be >= 0", "meta.horizon")

    records_doc = _require(doc, "records", "$")
    _expect(isinstance(records_doc, list), "expected a JSON array", "records")
    log = GradientLog(meta=meta)
    last = -1
    for i, rec_doc in enumerate(records_doc):
        path = f"records[{i}]"
        _expect(isinstance(rec_doc, dict), "expected a JSON object", path)
        record = BatchRecord(
            batch_index=_int_field(rec_doc, "batch_index", path),
            char_offset=_int_field(rec_doc, "char_offset", path),
            true_labels=_str_field(rec_doc, "true_labels", path),
            predicted_labels=_str_field(rec_doc, "predicted_labels", path),
            magnitudes=_magnitudes_field(rec_doc, path),
            max_gradient=_num_field(rec_doc, "max_gradient", path),
            batch_loss=_num_field(rec_doc, "batch_loss", path),
        )
        _expect(record.batch_index > last,
                f"batch_index {record.batch_index} not greater than previous {last}",
                f"{path}.batch_index")
        last = record.batch_index
        _validate_record_shape(record, meta, path)
        log.records.append(record)
    return log


def _validate_record_shape(record: BatchRecord, meta: RunMeta, path: str) -> None:
    n, k = meta.batch_size, meta.horizon
    _expect(len(record.true_labels) == n,
            f"true_labels length {len(record.true_labels)} != batch_size {n}",
            f"{path}.true_labels")
    _expect(len(record.predicted_labels) == n,
            f"predicted_labels length {len(record.predicted_labels)} != batch_size {n}",
            f"{path}.predicted_labels")
    _expect(len(record.magnitudes) == n,
            f"magnitudes has {len(record.magnitudes)} origins, expected {n}",
            f"{path}.magnitudes")
    for t, row in enumerate(record.magnitudes):
        want = min(k, t) + 1
        _expect(len(row) == want,
                f"origin {t} has {len(row)} magnitudes, expected {want}",
                f"{path}.magnitudes[{t}]")
        for d, m in enumerate(row):
            _expect(m >= 0 and math.isfinite(m),
                    f"magnitude must be finite and >= 0, got {m}",
                    f"{path}.magnitudes[{t}][{d}]")
    true_max = max(m for row in record.magnitudes for m in row)
    _expect(record.max_gradient == true_max,
            f"max_gradient {record.max_gradient!r} != max of magnitudes {true_max!r}",
            f"{path}.max_gradient")
    _expect(math.isfinite(record.batch_loss),
            f"batch_loss must be finite, got {record.batch_loss}",
            f"{path}.batch_loss")
    _expect(record.char_offset >= 0,
            f"char_offset must be >= 0, got {record.char_offset}",
            f"{path}.char_offset")


# field extraction helpers -- every failure is a located LogFormatError


def _typename(value) -> str:
    return type(value).__name__


def _expect(ok: bool, message: str, path: str) -> None:
    if not ok:
        raise LogFormatError(message, path=path)


def _require(doc: dict, name: str, parent: str):
    if name not in doc:
        raise LogFormatError("missing field",
                             path=name if parent == "$" else f"{parent}.{name}")
    return doc[name]


def _int_field(doc: dict, name: str, parent: str) -> int:
    v = _require(doc, name, parent)
    _expect(isinstance(v, int) and not isinstance(v, bool),
            f"expected integer, got {_typename(v)}", f"{parent}.{name}")
    return v


def _str_field(doc: dict, name: str, parent: str) -> str:
    v = _require(doc, name, parent)
    _expect(isinstance(v, str), f"expected string, got {_typename(v)}",
            f"{parent}.{name}")
    return v


def _num_field(doc: dict, name: str, parent: str) -> float:
    v = _require(doc, name, parent)
    _expect(isinstance(v, (int, float)) and not isinstance(v, bool),
            f"expected number, got {_typename(v)}", f"{parent}.{name}")
    return float(v)


def _magnitudes_field(doc: dict, parent: str) -> list[list[float]]:
    v = _require(doc, "magnitudes", parent)
    path = f"{parent}.magnitudes"
    _expect(isinstance(v, list), f"expected array, got {_typename(v)}", path)
    out: list[list[float]] = []
    for t, row in enumerate(v):
        _expect(isinstance(row, list), f"expected array, got {_typename(row)}",
                f"{path}[{t}]")
        for d, m in enumerate(row):
            _expect(isinstance(m, (int, float)) and not isinstance(m, bool),
                    f"expected number, got {_typename(m)}", f"{path}[{t}][{d}]")
        out.append([float(m) for m in row])
    return out
