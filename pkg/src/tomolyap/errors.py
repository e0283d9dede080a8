"""Exception hierarchy shared by all tomolyap modules."""


class TomolyapError(Exception):
    """Base class for all errors raised by this package."""


class ValidationError(TomolyapError):
    """Input violates a documented precondition (shape, normalization, range)."""


class InvalidDirectionError(ValidationError):
    """A tomography direction (mu, nu) is unusable, e.g. the zero vector."""


class UnsupportedDirectionError(ValidationError):
    """Direction valid in principle but not supported by this code path (nu = 0)."""


class InsufficientDataError(ValidationError):
    """Too little data for the requested operation (directions, series length)."""


class DegenerateSeriesError(ValidationError):
    """A time series has zero norms where the estimator needs them."""


class ConeError(TomolyapError):
    """A lattice access falls outside the guaranteed dependency cone."""


class ResourceError(TomolyapError):
    """A computation exceeds the configured memory or term budget."""


class NumericalError(TomolyapError):
    """A numerical operation failed (overflow, non-finite values, singularity)."""


class ConfigError(TomolyapError):
    """Experiment configuration could not be parsed or validated."""
