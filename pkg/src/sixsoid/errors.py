"""Exception types shared across the package."""


class DomainError(ValueError):
    """An argument lies outside the domain where an operation is defined."""


class FoiFormatError(DomainError):
    """A field-of-interest or plan document is malformed.

    ``field`` names the offending JSON field (e.g. ``"cells[3]"``).
    """

    def __init__(self, field: str, message: str):
        super().__init__(f"{field}: {message}")
        self.field = field


class ConvergenceError(RuntimeError):
    """Adaptive quadrature did not reach the requested tolerance.

    The best available estimate travels with the exception so callers can
    still report it.
    """

    def __init__(self, message: str, best_estimate: float, estimated_error: float):
        super().__init__(message)
        self.best_estimate = best_estimate
        self.estimated_error = estimated_error
