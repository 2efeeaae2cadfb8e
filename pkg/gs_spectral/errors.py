class GrayScottError(Exception):
    """Base class for all errors raised by ``gs_spectral``."""


class ConfigError(GrayScottError, ValueError):
    """Invalid run configuration (command line or config file)."""


class MeshError(GrayScottError, ValueError):
    """Invalid domain or triangulation request."""


class AssemblyError(GrayScottError, ValueError):
    """Inconsistent dimensions or non-finite integrand during assembly."""


class BasisError(GrayScottError, RuntimeError):
    """Generalized eigenproblem could not be solved."""


class SolverBlowupError(GrayScottError, FloatingPointError):
    """Solution became non-finite or exceeded the blowup threshold.

    Parameters
    ----------
    message : str
        Human readable description.
    step : int, optional
        Whole-step index at which the blowup was detected.
    time : float, optional
        Time value of the offending state.
    location : tuple, optional
        ``(x, y)`` of the first non-finite value, when known.

    """

    def __init__(self, message, step=None, time=None, location=None):
        super().__init__(message)
        self.step = step
        self.time = time
        self.location = location


class FixedPointError(GrayScottError, RuntimeError):
    """Implicit stage did not converge within the iteration cap."""

    def __init__(self, message, residual=None, iterations=None, step=None, time=None):
        super().__init__(message)
        self.residual = residual
        self.iterations = iterations
        self.step = step
        self.time = time


class MissingDataError(GrayScottError, LookupError):
    """A whole step needed for an error norm was not recorded."""
