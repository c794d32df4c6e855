"""Exception types shared across the package."""


class ValidationError(ValueError):
    """Input outside the documented domain of an operation."""


class ConfigError(ValueError):
    """Malformed or inconsistent run configuration.

    Carries the full list of diagnostics so a caller can report all
    violations, not just the first one.
    """

    def __init__(self, diagnostics):
        self.diagnostics = list(diagnostics)
        super().__init__("; ".join(self.diagnostics))


class ConvergenceError(RuntimeError):
    """A quadrature failed to meet its tolerance.

    Attributes
    ----------
    best : float
        Best available estimate of the integral.
    error_bound : float
        Estimated error bound on ``best``.
    """

    def __init__(self, message, best, error_bound):
        super().__init__(message)
        self.best = best
        self.error_bound = error_bound
