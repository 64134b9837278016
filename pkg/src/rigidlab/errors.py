"""Shared exception types."""


class SizeLimitError(ValueError):
    """An input exceeds the configured desk-scale caps."""


class InternalCheckError(RuntimeError):
    """A self-consistency cross-check failed; indicates a bug, not bad input."""
