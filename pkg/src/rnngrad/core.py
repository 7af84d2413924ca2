"""Vanilla character-RNN mathematics.

Forward recurrence over a batch of symbol indices:

    a_t = U @ onehot(x_t) + W @ h_{t-1}
    h_t = tanh(a_t)
    p_t = softmax(V @ h_t)
    loss_t = -ln(p_t[target_t])

All math is float64. The output distribution is a softmax over the
vocabulary (cross-entropy loss); hidden entries stay strictly inside
(-1, 1) after any step while the initial state may be exactly 0.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Sequence

import numpy as np

from .errors import DegenerateCorpusError, NumericError

# A hidden state is a float64 vector of length hidden_size.
HiddenState = np.ndarray


def softmax(logits: np.ndarray) -> np.ndarray:
    """Stable softmax: shift by the max logit before exponentiating."""
    e = np.exp(logits - logits.max())
    return e / e.sum()


def one_hot(index: int, size: int) -> np.ndarray:
    """Unit vector of length `size` with a 1 at `index`."""
    if not 0 <= index < size:
        raise IndexError(f"one_hot index {index} out of range [0, {size})")
    v = np.zeros(size)
    v[index] = 1.0
    return v


@dataclass(frozen=True)
class Vocabulary:
    """Ordered distinct symbols with their index mapping."""

    symbols: tuple[str, ...]

    def __post_init__(self):
        if len(self.symbols) < 2:
            raise DegenerateCorpusError(
                f"vocabulary needs >= 2 distinct symbols, got {len(self.symbols)}")
        if len(set(self.symbols)) != len(self.symbols):
            raise ValueError("vocabulary symbols must be distinct")

    @cached_property
    def index_of(self) -> dict[str, int]:
        return {s: i for i, s in enumerate(self.symbols)}

    @property
    def size(self) -> int:
        return len(self.symbols)

    def encode(self, text: str) -> np.ndarray:
        try:
            return np.fromiter((self.index_of[c] for c in text), dtype=np.int64,
                               count=len(text))
        except KeyError as exc:
            raise KeyError(f"symbol {exc.args[0]!r} not in vocabulary") from None

    def decode(self, indices: Sequence[int]) -> str:
        return "".join(self.symbols[int(i)] for i in indices)


def build_vocab(corpus_text: str) -> Vocabulary:
    """Distinct symbols of `corpus_text`, sorted by Unicode code point."""
    return Vocabulary(tuple(sorted(set(corpus_text))))


@dataclass
class ModelParams:
    """The three weight matrices; the learned state of the model.

    U: (H, C) input projection, W: (H, H) recurrent, V: (C, H) output.
    """

    U: np.ndarray
    W: np.ndarray
    V: np.ndarray

    @property
    def hidden_size(self) -> int:
        return self.W.shape[0]

    @property
    def vocab_size(self) -> int:
        return self.U.shape[1]

    @classmethod
    def init_gaussian(cls, hidden_size: int, vocab_size: int, scale: float,
                      rng: np.random.Generator) -> "ModelParams":
        """Seeded Gaussian init, mean 0 / std `scale`, drawn in U, W, V order."""
        return cls(
            U=rng.normal(0.0, scale, (hidden_size, vocab_size)),
            W=rng.normal(0.0, scale, (hidden_size, hidden_size)),
            V=rng.normal(0.0, scale, (vocab_size, hidden_size)),
        )

    def copy(self) -> "ModelParams":
        return ModelParams(self.U.copy(), self.W.copy(), self.V.copy())

    def validate(self) -> None:
        H, C = self.hidden_size, self.vocab_size
        shapes = {"U": (H, C), "W": (H, H), "V": (C, H)}
        for name, want in shapes.items():
            m = getattr(self, name)
            if m.shape != want:
                raise ValueError(f"matrix {name} has shape {m.shape}, expected {want}")
            if not np.isfinite(m).all():
                raise NumericError(f"non-finite values in matrix {name}", matrix=name)


@dataclass(frozen=True)
class StepRecord:
    """One forward step: input, pre-activation, state, output distribution."""

    x: int
    a: np.ndarray
    h: HiddenState
    p: np.ndarray
    predicted: int
    loss: float | None = None


@dataclass(frozen=True)
class ForwardTrace:
    """A forward pass over one batch, with per-step losses."""

    h0: HiddenState
    steps: list[StepRecord]
    targets: np.ndarray
    total_loss: float

    @property
    def n(self) -> int:
        return len(self.steps)

    def h_prev(self, t: int) -> HiddenState:
        """Hidden state feeding step t (h0 for t = 0)."""
        return self.h0 if t == 0 else self.steps[t - 1].h


def forward_step(params: ModelParams, h_prev: HiddenState, x: int) -> StepRecord:
    """One recurrence step; the returned record carries no loss."""
    a = params.U[:, x] + params.W @ h_prev
    h = np.tanh(a)
    p = softmax(params.V @ h)
    return StepRecord(x=int(x), a=a, h=h, p=p, predicted=int(np.argmax(p)))


def forward_batch(params: ModelParams, h0: HiddenState,
                  inputs: Sequence[int], targets: Sequence[int]) -> ForwardTrace:
    """Thread the hidden state through the batch and score each target."""
    inputs = np.asarray(inputs, dtype=np.int64)
    targets = np.asarray(targets, dtype=np.int64)
    if inputs.shape != targets.shape or inputs.ndim != 1 or inputs.size < 1:
        raise ValueError(
            f"batch shape mismatch: {len(inputs)} inputs vs {len(targets)} targets")
    params.validate()

    h = h0
    steps: list[StepRecord] = []
    total = 0.0
    for x, y in zip(inputs, targets):
        step = forward_step(params, h, int(x))
        loss = -np.log(step.p[y])
        steps.append(StepRecord(step.x, step.a, step.h, step.p, step.predicted,
                                loss=float(loss)))
        total += float(loss)
        h = step.h
    return ForwardTrace(h0=h0, steps=steps, targets=targets, total_loss=total)
