"""Exceptions shared across modules."""


class InternalConsistencyError(RuntimeError):
    """Two independent computations of the same quantity disagreed.

    This always indicates a bug in the library, never bad input.
    """


class ResourceLimitError(RuntimeError):
    """A configured desk-scale resource bound was exceeded."""
