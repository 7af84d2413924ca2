"""Batching, the gradient-descent loop, periodic recording, generation.

A batch is a contiguous corpus slice: inputs corpus[b*n .. b*n+n-1] and
targets shifted one symbol right. The hidden state is carried across
consecutive batches within a corpus pass and reset to zero whenever the
corpus wraps. Every `record_interval` batches the itemized engine runs
instead of the single-pass one and a BatchRecord is appended to the log;
logged magnitudes are taken before gradient clipping.
"""

from __future__ import annotations

import hashlib
from collections import deque
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .backprop import GradientSet, bptt_itemized, bptt_standard
from .core import (ForwardTrace, HiddenState, ModelParams, Vocabulary,
                   build_vocab, forward_step)
from .core import forward_batch as _forward_batch
from .errors import ConfigError, NumericError
from .gradlog import BatchRecord, GradientLog, RunMeta

# progress callback: (batch_index, batch mean per-char loss, smoothed loss)
ProgressFn = Callable[[int, float, float], None]
# snapshot hook for recorded batches: (batch_index, params copy, h0 copy)
SnapshotFn = Callable[[int, ModelParams, HiddenState], None]


@dataclass
class TrainingConfig:
    """Hyperparameters and recording policy; with a seed, determines a run."""

    batch_size: int = 25
    hidden_size: int = 100
    learning_rate: float = 0.1
    optimizer: str = "adagrad"  # "adagrad" | "sgd"
    clip_threshold: float = 5.0
    record_interval: int = 100
    horizon: int = 5
    max_batches: int = 5000
    init_scale: float = 0.01
    seed: int = 0
    epsilon_adagrad: float = 1e-8

    def validate(self) -> None:
        checks = [
            (self.batch_size >= 2, f"batch_size must be >= 2, got {self.batch_size}"),
            (self.hidden_size >= 1, f"hidden_size must be >= 1, got {self.hidden_size}"),
            (self.record_interval >= 1,
             f"record_interval must be >= 1, got {self.record_interval}"),
            (self.horizon >= 0, f"horizon must be >= 0, got {self.horizon}"),
            (self.learning_rate > 0,
             f"learning_rate must be > 0, got {self.learning_rate}"),
            (self.clip_threshold > 0,
             f"clip_threshold must be > 0, got {self.clip_threshold}"),
            (self.max_batches >= 1, f"max_batches must be >= 1, got {self.max_batches}"),
            (self.optimizer in ("sgd", "adagrad"),
             f"optimizer must be 'sgd' or 'adagrad', got {self.optimizer!r}"),
            (self.init_scale > 0, f"init_scale must be > 0, got {self.init_scale}"),
        ]
        for ok, msg in checks:
            if not ok:
                raise ConfigError(msg)


@dataclass
class OptimizerState:
    """Accumulated squared gradients per matrix (adagrad only)."""

    accU: np.ndarray | None = None
    accW: np.ndarray | None = None
    accV: np.ndarray | None = None

    @classmethod
    def for_params(cls, params: ModelParams, optimizer: str) -> "OptimizerState":
        if optimizer == "sgd":
            return cls()
        return cls(accU=np.zeros_like(params.U), accW=np.zeros_like(params.W),
                   accV=np.zeros_like(params.V))


def make_batches(corpus: np.ndarray, n: int) -> list[tuple[np.ndarray, np.ndarray]]:
    """Non-overlapping (inputs, targets) windows; remainder < n is dropped."""
    corpus = np.asarray(corpus, dtype=np.int64)
    if len(corpus) < n + 1:
        raise ConfigError(
            f"corpus too short: {len(corpus)} symbols, need at least {n + 1}")
    count = (len(corpus) - 1) // n
    return [(corpus[b * n:b * n + n], corpus[b * n + 1:b * n + n + 1])
            for b in range(count)]


def clip_gradients(g: GradientSet, threshold: float) -> GradientSet:
    """Clamp every gradient entry to [-threshold, +threshold]."""
    return GradientSet(dU=np.clip(g.dU, -threshold, threshold),
                       dW=np.clip(g.dW, -threshold, threshold),
                       dV=np.clip(g.dV, -threshold, threshold))


def apply_update(params: ModelParams, g: GradientSet, cfg: TrainingConfig,
                 opt: OptimizerState) -> tuple[ModelParams, OptimizerState]:
    """One gradient-descent step, in place; aborts on non-finite results."""
    triples = [("U", params.U, g.dU, opt.accU),
               ("W", params.W, g.dW, opt.accW),
               ("V", params.V, g.dV, opt.accV)]
    for name, theta, grad, acc in triples:
        if cfg.optimizer == "sgd":
            theta -= cfg.learning_rate * grad
        else:
            acc += grad * grad
            theta -= cfg.learning_rate * grad / np.sqrt(acc + cfg.epsilon_adagrad)
        if not np.isfinite(theta).all():
            raise NumericError(f"non-finite values in matrix {name} after update",
                               matrix=name)
    return params, opt


def _corpus_id(corpus_text: str) -> str:
    return "sha256:" + hashlib.sha256(corpus_text.encode("utf-8")).hexdigest()[:12]


def train(corpus_text: str, cfg: TrainingConfig, *,
          corpus_id: str | None = None,
          progress: ProgressFn | None = None,
          snapshot_hook: SnapshotFn | None = None,
          ) -> tuple[ModelParams, GradientLog]:
    """Run the full training loop; deterministic given cfg and seed.

    `progress` fires once per batch with the smoothed (100-batch window)
    mean per-character loss. `snapshot_hook` fires for each recorded batch
    with copies of the parameters and incoming hidden state, before the
    forward pass.
    """
    cfg.validate()
    vocab = build_vocab(corpus_text)
    batches = make_batches(vocab.encode(corpus_text), cfg.batch_size)

    rng = np.random.default_rng(cfg.seed)
    params = ModelParams.init_gaussian(cfg.hidden_size, vocab.size,
                                       cfg.init_scale, rng)
    opt = OptimizerState.for_params(params, cfg.optimizer)

    meta = RunMeta(
        hidden_size=cfg.hidden_size, batch_size=cfg.batch_size,
        horizon=cfg.horizon, record_interval=cfg.record_interval,
        vocab="".join(vocab.symbols), optimizer=cfg.optimizer,
        learning_rate=cfg.learning_rate, init_scale=cfg.init_scale,
        seed=cfg.seed,
        corpus_id=corpus_id if corpus_id is not None else _corpus_id(corpus_text),
    )
    log = GradientLog(meta=meta)

    h: HiddenState = np.zeros(cfg.hidden_size)
    window: deque[float] = deque(maxlen=100)
    window_sum = 0.0

    for b in range(cfg.max_batches):
        bi = b % len(batches)
        if bi == 0 and b > 0:
            h = np.zeros(cfg.hidden_size)  # corpus wrapped
        inputs, targets = batches[bi]

        record_this = b % cfg.record_interval == 0
        if record_this and snapshot_hook is not None:
            snapshot_hook(b, params.copy(), h.copy())

        trace = _forward_batch(params, h, inputs, targets)
        mean_loss = trace.total_loss / cfg.batch_size

        if record_this:
            grads, item = bptt_itemized(trace, params, cfg.horizon)
            log.append_record(_make_record(b, bi * cfg.batch_size, trace, item,
                                           vocab, mean_loss))
        else:
            grads = bptt_standard(trace, params)

        grads = clip_gradients(grads, cfg.clip_threshold)
        try:
            apply_update(params, grads, cfg, opt)
        except NumericError as exc:
            raise NumericError(f"{exc} at batch {b}", matrix=exc.matrix,
                               batch_index=b) from None

        h = trace.steps[-1].h
        if len(window) == window.maxlen:
            window_sum -= window[0]
        window.append(mean_loss)
        window_sum += mean_loss
        if progress is not None:
            progress(b, mean_loss, window_sum / len(window))

    return params, log


def _make_record(batch_index: int, char_offset: int, trace: ForwardTrace,
                 item, vocab: Vocabulary, mean_loss: float) -> BatchRecord:
    n = trace.n
    magnitudes = [item.magnitudes_by_distance(t) for t in range(n)]
    return BatchRecord(
        batch_index=batch_index,
        char_offset=char_offset,
        true_labels=vocab.decode(trace.targets),
        predicted_labels=vocab.decode([s.predicted for s in trace.steps]),
        magnitudes=magnitudes,
        max_gradient=max(m for row in magnitudes for m in row),
        batch_loss=mean_loss,
    )


def generate(params: ModelParams, vocab: Vocabulary, seed_symbol: str,
             length: int, mode: str = "sample", seed: int = 0) -> str:
    """Emit `length` symbols, feeding each one back as the next input.

    Starts from h = 0 with `seed_symbol` as the first input. argmax mode
    is deterministic; sample mode draws from the output distribution with
    a generator seeded by `seed`.
    """
    if length < 1:
        raise ConfigError(f"length must be >= 1, got {length}")
    if mode not in ("argmax", "sample"):
        raise ConfigError(f"mode must be 'argmax' or 'sample', got {mode!r}")
    if seed_symbol not in vocab.index_of:
        raise ConfigError(f"seed symbol {seed_symbol!r} not in vocabulary")

    rng = np.random.default_rng(seed)
    h: HiddenState = np.zeros(params.hidden_size)
    x = vocab.index_of[seed_symbol]
    out: list[str] = []
    for _ in range(length):
        step = forward_step(params, h, x)
        h = step.h
        if mode == "argmax":
            x = step.predicted
        else:
            x = int(rng.choice(vocab.size, p=step.p))
        out.append(vocab.symbols[x])
    return "".join(out)
