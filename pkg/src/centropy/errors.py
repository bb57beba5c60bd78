"""Exception types raised by centropy."""


class CentropyError(Exception):
    """Base class for all centropy errors."""


class NotHermitian(CentropyError, ValueError):
    pass


class NoConvergence(CentropyError, RuntimeError):
    pass


class NotUnitTrace(CentropyError, ValueError):
    pass


class NotPSD(CentropyError, ValueError):
    pass


class NotUnitary(CentropyError, ValueError):
    pass


class OutOfRange(CentropyError, ValueError):
    pass


class DegenerateSpectrum(CentropyError, ValueError):
    """Closed-form expression hit a zero eigenvalue (log 0)."""


class TargetInsideClass(CentropyError, ValueError):
    """A witness was requested for a state that already lies in ACVENN."""
