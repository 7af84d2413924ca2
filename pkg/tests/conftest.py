"""Shared fixtures: corpora, random instances, and the big seeded run."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import pytest

from rnngrad import GradientLog, ModelParams, TrainingConfig, forward_batch, train
from rnngrad.core import ForwardTrace
from rnngrad.corpus import synthetic_code


@pytest.fixture(scope="session")
def demo_text() -> str:
    """Deterministic >= 100 KB corpus with learnable structure."""
    text = synthetic_code(120_000, seed=0)
    assert len(text) >= 100_000
    return text


@pytest.fixture(scope="session")
def tiny_text() -> str:
    return synthetic_code(30_000, seed=1)


def random_instance(seed: int, hidden: int, vocab_size: int, n: int,
                    scale: float = 0.6, h0_zero: bool = False,
                    ) -> tuple[ModelParams, np.ndarray, np.ndarray, np.ndarray,
                               ForwardTrace]:
    """Seeded (params, h0, inputs, targets, trace) for gradient checks."""
    rng = np.random.default_rng(seed)
    params = ModelParams.init_gaussian(hidden, vocab_size, scale, rng)
    h0 = np.zeros(hidden) if h0_zero else rng.uniform(-0.8, 0.8, hidden)
    inputs = rng.integers(0, vocab_size, n)
    targets = rng.integers(0, vocab_size, n)
    trace = forward_batch(params, h0, inputs, targets)
    return params, h0, inputs, targets, trace


@dataclass
class BigRun:
    """The pinned seed-0 run at the experiment defaults, 30001 batches."""

    cfg: TrainingConfig
    params: ModelParams
    log: GradientLog
    smoothed: dict[int, float]  # smoothed loss captured at batches 2000, 10000
    corpus_text: str
    vocab_size: int


@pytest.fixture(scope="session")
def big_run(demo_text) -> BigRun:
    marks: dict[int, float] = {}

    def progress(b: int, loss: float, smoothed: float) -> None:
        if b in (2000, 10000):
            marks[b] = smoothed

    cfg = TrainingConfig(max_batches=30001, seed=0)
    params, log = train(demo_text, cfg, progress=progress)
    return BigRun(cfg=cfg, params=params, log=log, smoothed=marks,
                  corpus_text=demo_text, vocab_size=len(set(demo_text)))
