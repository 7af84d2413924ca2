"""Two gradient engines over a ForwardTrace.

`bptt_standard` is the usual single-pass backpropagation through time:
a running accumulator carries the summed loss-head terms backwards, so
the full gradient costs O(n * H * (H + C)).

`bptt_itemized` trades that pass for one backward walk per loss origin t,
recording the contribution each origin makes to the recurrent-weight
gradient at every earlier step j. The per-(t, j) contribution is

    g = d * tanh'(a_j)          with d seeded by the loss head at t
    contrib(t, j) = outer(g, h_{j-1})
    d <- W^T @ g                 (propagate one step further back)

Summing contributions over the full triangular domain reproduces the
single-pass dW exactly (up to float re-association); truncating the walk
at a horizon k yields the cheaper approximation used during recording.

Origins and steps are 0-based here and in serialized data; prose
elsewhere may count them from 1.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import ForwardTrace, ModelParams

Key = tuple[int, int]  # (origin t, step j), j <= t


def loss_head_deltas(trace: ForwardTrace, params: ModelParams) -> np.ndarray:
    """Per-step loss-head gradient w.r.t. the hidden state, shape (n, H).

    For softmax cross-entropy: delta_t = V^T @ (p_t - onehot(target_t)).
    """
    n = trace.n
    deltas = np.empty((n, params.hidden_size))
    for t, step in enumerate(trace.steps):
        dy = step.p.copy()
        dy[trace.targets[t]] -= 1.0
        deltas[t] = params.V.T @ dy
    return deltas


@dataclass
class GradientSet:
    """Gradients of total batch loss w.r.t. U, W, V."""

    dU: np.ndarray
    dW: np.ndarray
    dV: np.ndarray

    def copy(self) -> "GradientSet":
        return GradientSet(self.dU.copy(), self.dW.copy(), self.dV.copy())


@dataclass
class ItemizedGradients:
    """Per-origin gradient contributions to dW over a triangular domain.

    Entries exist for origins t in [0, n) and steps j with
    max(0, t - k) <= j <= t. `magnitude` is the mean absolute value of the
    matching contribution matrix.
    """

    horizon: int
    n: int
    contrib: dict[Key, np.ndarray]
    magnitude: dict[Key, float]

    def steps_for(self, t: int) -> range:
        """Recorded steps for origin t, ascending j."""
        self._check_origin(t)
        return range(max(0, t - self.horizon), t + 1)

    def magnitudes_by_distance(self, t: int) -> list[float]:
        """Magnitudes for origin t ordered by distance d = t - j, d = 0.."""
        self._check_origin(t)
        return [self.magnitude[(t, t - d)]
                for d in range(min(self.horizon, t) + 1)]

    def sum_contrib(self) -> np.ndarray:
        """Entrywise sum of every recorded contribution (equals dW).

        Summation order matches the engine's accumulation (origins
        ascending, steps descending) so the identity is exact.
        """
        total = np.zeros_like(next(iter(self.contrib.values())))
        for t in range(self.n):
            for j in reversed(self.steps_for(t)):
                total += self.contrib[(t, j)]
        return total

    def _check_origin(self, t: int) -> None:
        if not 0 <= t < self.n:
            raise IndexError(f"origin {t} out of domain [0, {self.n})")


def aggregate_magnitude(m: np.ndarray) -> float:
    """Mean absolute value over all matrix entries."""
    return float(np.abs(m).mean())


def bptt_standard(trace: ForwardTrace, params: ModelParams) -> GradientSet:
    """Exact gradients of total loss in a single backward pass."""
    deltas = loss_head_deltas(trace, params)
    dU = np.zeros_like(params.U)
    dW = np.zeros_like(params.W)
    dV = np.zeros_like(params.V)

    acc = np.zeros(params.hidden_size)
    for t in range(trace.n - 1, -1, -1):
        step = trace.steps[t]
        dy = step.p.copy()
        dy[trace.targets[t]] -= 1.0
        dV += np.outer(dy, step.h)

        acc = acc + deltas[t]
        g = acc * (1.0 - step.h * step.h)  # tanh'(a_t) = 1 - h_t^2
        dW += np.outer(g, trace.h_prev(t))
        dU[:, step.x] += g
        acc = params.W.T @ g

    return GradientSet(dU=dU, dW=dW, dV=dV)


def bptt_itemized(trace: ForwardTrace, params: ModelParams,
                  horizon: int) -> tuple[GradientSet, ItemizedGradients]:
    """Per-origin decomposition of dW, truncated `horizon` steps back.

    dU and dV are not itemized; they come from the single-pass engine and
    are bit-identical to its output. The returned dW is the sum of the
    recorded contributions, so with horizon >= n - 1 it matches the
    single-pass dW up to float re-association.
    """
    if horizon < 0:
        raise ValueError(f"horizon must be >= 0, got {horizon}")
    deltas = loss_head_deltas(trace, params)
    contrib: dict[Key, np.ndarray] = {}
    magnitude: dict[Key, float] = {}
    dW = np.zeros_like(params.W)

    for t in range(trace.n):
        d = deltas[t]
        for j in range(t, max(0, t - horizon) - 1, -1):
            h_j = trace.steps[j].h
            g = d * (1.0 - h_j * h_j)
            c = np.outer(g, trace.h_prev(j))
            contrib[(t, j)] = c
            magnitude[(t, j)] = aggregate_magnitude(c)
            dW += c
            d = params.W.T @ g

    full = bptt_standard(trace, params)
    grads = GradientSet(dU=full.dU, dW=dW, dV=full.dV)
    return grads, ItemizedGradients(horizon=horizon, n=trace.n,
                                    contrib=contrib, magnitude=magnitude)


def decay_ratios(item: ItemizedGradients, t: int) -> list[float]:
    """Stepwise decay of origin t's magnitudes walking backwards from t.

    Ratio at position i is magnitude(t, j) / magnitude(t, j + 1) for
    j = t - 1 - i. A 0/positive ratio is +inf; 0/0 is defined as 1.
    """
    mags = item.magnitudes_by_distance(t)
    if len(mags) < 2:
        raise ValueError(f"origin {t} has {len(mags)} recorded step(s), need >= 2")
    ratios = []
    for nearer, farther in zip(mags, mags[1:]):
        if farther == 0.0 and nearer == 0.0:
            ratios.append(1.0)
        elif nearer == 0.0:
            ratios.append(float("inf"))
        else:
            ratios.append(farther / nearer)
    return ratios


def gradient_horizon(item: ItemizedGradients, t: int, epsilon: float) -> int:
    """How many consecutive steps back from t stay at or above `epsilon`."""
    if epsilon <= 0:
        raise ValueError(f"epsilon must be > 0, got {epsilon}")
    count = 0
    for mag in item.magnitudes_by_distance(t):
        if mag < epsilon:
            break
        count += 1
    return count
