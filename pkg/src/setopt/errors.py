"""Exception types shared across the package."""


class SetOptError(Exception):
    """Base class for all package errors."""


class DimensionMismatchError(SetOptError, ValueError):
    """A vector or cloud does not match the expected space dimension."""


class ProblemValidationError(SetOptError, ValueError):
    """A problem document or constructed instance violates an invariant."""


class InternalConsistencyError(SetOptError, RuntimeError):
    """Two computation paths that must agree did not.

    Signals tolerance misconfiguration or a bug, never bad user input.
    Mapped to exit code 2 by the CLI.
    """
