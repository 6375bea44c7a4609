"""Exception types shared across the library."""


class InvalidParameterError(ValueError):
    """Raised when a stable-law parameter pair or function argument is outside
    the admissible set."""


class UnsupportedCaseError(NotImplementedError):
    """Raised for parameter regimes with no closed-form representation
    (e.g. horizontal-axis sampling away from the Brownian and Cauchy cases)."""


class AccuracyError(RuntimeError):
    """Raised when a numeric routine cannot reach its accuracy target.

    Carries a ``diagnostics`` dict with the achieved error estimate and the
    integration state that triggered the failure.
    """

    def __init__(self, message, diagnostics=None):
        super().__init__(message)
        self.diagnostics = dict(diagnostics or {})
