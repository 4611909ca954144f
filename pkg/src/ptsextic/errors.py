"""Exception types shared across the solver modules."""


class DomainError(ValueError):
    """Input outside the domain where the operation is defined."""


class IntegrationError(ArithmeticError):
    """The ODE state became non-finite."""

    def __init__(self, message, s=None):
        super().__init__(message)
        self.s = s


class ConvergenceError(RuntimeError):
    """An iterative solver ran out of iterations.

    ``best`` holds the last (or best) iterate so callers can inspect it.
    """

    def __init__(self, message, best=None, residual=None):
        super().__init__(message)
        self.best = best
        self.residual = residual


class DuplicateLevelError(RuntimeError):
    """Two seeds converged to the same eigenvalue."""

    def __init__(self, message, level=None):
        super().__init__(message)
        self.level = level


class TruncationError(ValueError):
    """Oscillator basis too small for the requested matrix elements."""


class LUBreakdownError(ArithmeticError):
    """Tridiagonal factorization failed even after shifting the target."""
