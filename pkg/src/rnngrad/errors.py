"""Exception types shared across the package.

The CLI maps these onto exit codes: file / log-format problems exit 1,
configuration problems exit 2, numeric aborts exit 3.
"""

from __future__ import annotations


class ConfigError(ValueError):
    """Invalid configuration or argument value."""


class DegenerateCorpusError(ConfigError):
    """Corpus has fewer than two distinct symbols."""


class NumericError(ArithmeticError):
    """Non-finite values appeared in a parameter matrix or update.

    `matrix` names the offending matrix; `batch_index` is set when the
    failure happened inside the training loop.
    """

    def __init__(self, message: str, matrix: str | None = None,
                 batch_index: int | None = None):
        super().__init__(message)
        self.matrix = matrix
        self.batch_index = batch_index


class LogFormatError(ValueError):
    """A gradient-log (or model) file violates the schema or its invariants.

    `path` locates the offending field, e.g. ``records[3].max_gradient``.
    """

    def __init__(self, message: str, path: str = ""):
        super().__init__(f"{path}: {message}" if path else message)
        self.path = path
