"""Exception types shared across the package."""


class DomainError(ValueError):
    """An input lies outside the documented domain of an operation."""


class NumericError(RuntimeError):
    """An integrator or linear solve failed to produce a usable result."""


class PeriodDetectionError(NumericError):
    """No return to a neck state was found within the search horizon."""


class SolverError(NumericError):
    """The gauge-fixed Newton system is singular or produced non-finite data."""


class FitError(RuntimeError):
    """An end fit is ill conditioned (degenerate axis, window too short)."""
