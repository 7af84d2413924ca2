"""Model persistence: weights + vocabulary as human-inspectable JSON.

Same conventions as the gradient log: schema_version 1, matrices as
nested decimal arrays, vocabulary as a string of symbols in index order.
"""

from __future__ import annotations

import json

import numpy as np

from .core import ModelParams, Vocabulary
from .errors import LogFormatError

MODEL_SCHEMA_VERSION = 1


def save_model(path: str, params: ModelParams, vocab: Vocabulary) -> None:
    doc = {
        "schema_version": MODEL_SCHEMA_VERSION,
        "hidden_size": params.hidden_size,
        "vocab": "".join(vocab.symbols),
        "U": params.U.tolist(),
        "W": params.W.tolist(),
        "V": params.V.tolist(),
    }
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(doc, fh, ensure_ascii=False, allow_nan=False)


def load_model(path: str) -> tuple[ModelParams, Vocabulary]:
    with open(path, "rb") as fh:
        data = fh.read()
    try:
        doc = json.loads(data.decode("utf-8"))
    except (UnicodeDecodeError, json.JSONDecodeError) as exc:
        raise LogFormatError(f"not valid UTF-8 JSON: {exc}") from None
    if not isinstance(doc, dict):
        raise LogFormatError("expected a JSON object", path="$")
    version = doc.get("schema_version")
    if version != MODEL_SCHEMA_VERSION:
        raise LogFormatError(f"unsupported schema_version {version!r}",
                             path="schema_version")
    for name in ("hidden_size", "vocab", "U", "W", "V"):
        if name not in doc:
            raise LogFormatError("missing field", path=name)
    if not isinstance(doc["vocab"], str) or len(doc["vocab"]) < 2:
        raise LogFormatError("vocab must be a string of >= 2 symbols",
                             path="vocab")
    vocab = Vocabulary(tuple(doc["vocab"]))
    try:
        params = ModelParams(U=np.asarray(doc["U"], dtype=float),
                             W=np.asarray(doc["W"], dtype=float),
                             V=np.asarray(doc["V"], dtype=float))
    except (TypeError, ValueError) as exc:
        raise LogFormatError(f"bad matrix data: {exc}") from None
    H, C = doc["hidden_size"], vocab.size
    want = {"U": (H, C), "W": (H, H), "V": (C, H)}
    for name, shape in want.items():
        got = getattr(params, name).shape
        if got != shape:
            raise LogFormatError(f"shape {got} != expected {shape}", path=name)
        if not np.isfinite(getattr(params, name)).all():
            raise LogFormatError("non-finite entries", path=name)
    return params, vocab
