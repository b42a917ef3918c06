"""Exception types shared across the package."""


class ConsistencyError(RuntimeError):
    """A derived quantity disagreed with its closed form.

    This always means a transcription bug in a formula, never bad user input.
    ``witness`` holds the exact values that failed to agree.
    """

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = dict(witness or {})


class SingularMatrixError(ValueError):
    pass


class UnsupportedShapeError(ValueError):
    pass


class DimensionCapError(ValueError):
    """Raised when a dimension or index exceeds the safety cap."""


class ResourceLimitError(DimensionCapError):
    """Raised when the numbers involved would not fit in memory."""
