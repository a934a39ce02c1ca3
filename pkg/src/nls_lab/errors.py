"""Exception hierarchy shared by all modules.

DomainError covers invalid parameters and out-of-window inputs (CLI exit
code 2); NumericError covers genuine numerical failures that valid inputs
should never trigger (CLI exit code 3).
"""


class DomainError(ValueError):
    """Inputs outside the mathematical domain of an operation."""


class NoStandingWaveError(DomainError):
    """Raised when both nonlinearity coefficients are negative: no standing waves exist."""


class NumericError(RuntimeError):
    """A numerical procedure failed (non-convergence, NaN, lost bracket)."""


class AccuracyError(NumericError):
    """Quadrature did not reach the requested tolerance.

    Carries the best available estimate and a conservative error bound.
    """

    def __init__(self, message: str, estimate: float, error_bound: float):
        super().__init__(message)
        self.estimate = estimate
        self.error_bound = error_bound
