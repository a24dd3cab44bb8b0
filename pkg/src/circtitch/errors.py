"""Exception kinds shared by the analyzers and the command line."""


class CircTitchError(Exception):
    """Base class for errors raised by this package."""


class InputError(CircTitchError, ValueError):
    """Malformed or invalid input (file, expression, angle)."""


class HypothesisViolation(CircTitchError, ValueError):
    """The inputs do not satisfy the hypotheses of the requested theorem."""

    def __init__(self, message: str, bound: str | None = None):
        super().__init__(message)
        self.bound = bound


class TheoremViolation(CircTitchError, AssertionError):
    """A conclusion guaranteed by the theorems failed to hold.

    This never happens for a correct engine; the fuzzer treats it as a
    falsification alarm.  ``instance`` carries the offending inputs.
    """

    def __init__(self, message: str, instance=None):
        super().__init__(message)
        self.instance = instance
