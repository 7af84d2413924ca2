"""Character-level RNN training with itemized gradient recording.

The library trains a vanilla tanh RNN on next-character prediction while
periodically decomposing the recurrent-weight gradient by the loss origin
that produced it. The per-(origin, step) magnitudes land in a JSON
gradient log that the CLI can inspect, render to figures, or serve to the
browser explorer.
"""

from .backprop import (GradientSet, ItemizedGradients, aggregate_magnitude,
                       bptt_itemized, bptt_standard, decay_ratios,
                       gradient_horizon, loss_head_deltas)
from .core import (ForwardTrace, ModelParams, StepRecord, Vocabulary,
                   build_vocab, forward_batch, forward_step, one_hot, softmax)
from .errors import (ConfigError, DegenerateCorpusError, LogFormatError,
                     NumericError)
from .gradlog import (BatchRecord, GradientLog, LogSummary, RunMeta,
                      append_record, deserialize, serialize, summary)
from .trainer import (OptimizerState, TrainingConfig, apply_update,
                      clip_gradients, generate, make_batches, train)

__version__ = "0.1.0"

__all__ = [
    "GradientSet", "ItemizedGradients", "aggregate_magnitude",
    "bptt_itemized", "bptt_standard", "decay_ratios", "gradient_horizon",
    "loss_head_deltas",
    "ForwardTrace", "ModelParams", "StepRecord", "Vocabulary",
    "build_vocab", "forward_batch", "forward_step", "one_hot", "softmax",
    "ConfigError", "DegenerateCorpusError", "LogFormatError", "NumericError",
    "BatchRecord", "GradientLog", "LogSummary", "RunMeta",
    "append_record", "deserialize", "serialize", "summary",
    "OptimizerState", "TrainingConfig", "apply_update", "clip_gradients",
    "generate", "make_batches", "train",
    "__version__",
]
