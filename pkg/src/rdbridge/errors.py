"""Exception types shared across the package."""


class InvalidInputError(ValueError):
    """Raised when an input fails validation (bad mass, shape, sign, ...).

    Inputs are rejected, never silently repaired: a weight vector whose mass
    is off by more than the validation tolerance is the caller's bug.
    """


class ConvergenceError(RuntimeError):
    """An iterative solver exhausted its iteration budget.

    The partial state reached at the last iteration is attached as
    ``.partial`` so callers can inspect or continue from it.
    """

    def __init__(self, message, partial=None):
        super().__init__(message)
        self.partial = partial


class StaleCertificateError(RuntimeError):
    """A dual/potential evaluation was requested from a non-converged solve."""


class EmptyComparisonError(ValueError):
    """A curve comparison was requested over a window containing no points."""
