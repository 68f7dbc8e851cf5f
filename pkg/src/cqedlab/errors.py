"""Exception hierarchy shared by all cqedlab modules."""


class CqedError(Exception):
    """Base class for every error raised by cqedlab."""


class DimensionError(CqedError, ValueError):
    pass


class CapacityError(CqedError):
    pass


class SymmetryError(CqedError, ValueError):
    """Raised when a matrix expected to be Hermitian is not."""

    def __init__(self, message, asymmetry=None):
        super().__init__(message)
        self.asymmetry = asymmetry


class DomainError(CqedError, ValueError):
    pass


class RegimeError(CqedError, ValueError):
    """Parameters fall outside the regime where an approximation holds."""


class PreconditionError(CqedError, ValueError):
    pass


class IntegrationError(CqedError):
    """A state produced by the integrator violated a density-matrix invariant."""

    def __init__(self, message, time=None):
        super().__init__(message)
        self.time = time


class SteadyStateError(CqedError):
    pass


class MultiplicityError(SteadyStateError):
    """The Liouvillian null space is not one-dimensional."""

    def __init__(self, message, null_dim=None):
        super().__init__(message)
        self.null_dim = null_dim


class UndefinedAngleError(CqedError, ValueError):
    pass


class ConfigError(CqedError, ValueError):
    pass


class CutoffWarning(UserWarning):
    """Charge-basis cutoff is too small for the requested bands."""


class RegimeWarning(UserWarning):
    pass
