"""
Exception types shared across the simulator
"""
from typing import Sequence


class ByzsimError(Exception):
    """Base class for simulator errors."""


class DimensionMismatch(ByzsimError, ValueError):
    """Two vectors combined by a binary operation have different lengths."""

    def __init__(self, left: int, right: int):
        self.left = left
        self.right = right
        super().__init__(f"Dimension mismatch: {left} != {right}")


class DegenerateTarget(ByzsimError, ValueError):
    """Projection target has (numerically) zero norm."""


class IdxParseError(ByzsimError, ValueError):
    """IDX file could not be parsed."""

    def __init__(self, path, offset: int, reason: str):
        self.path = str(path)
        self.offset = offset
        self.reason = reason
        super().__init__(f"{self.path}: {reason} at byte offset {offset}")


class ConfigError(ByzsimError, ValueError):
    """Config or grid document is invalid."""

    def __init__(self, message: str, keys: Sequence[str] = ()):
        self.keys = list(keys)
        super().__init__(message)


class RoundError(ByzsimError):
    """A module error raised while executing a training round."""

    def __init__(self, round_index: int, cause: Exception):
        self.round_index = round_index
        self.cause = cause
        super().__init__(f"Round {round_index} failed: {type(cause).__name__}: {cause}")
