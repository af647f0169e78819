"""Exception types shared across the package."""


class VMVTError(Exception):
    """Base class for errors raised by this package."""


class ResourceExceeded(VMVTError):
    """A table or search space would exceed the configured memory budget."""


class InvariantViolation(VMVTError):
    """Two routes that must agree did not. Always an implementation bug."""


class InvalidDegree(VMVTError, ValueError):
    pass


class NotPrime(VMVTError, ValueError):
    pass


class ResiduesNotDistinct(VMVTError, ValueError):
    pass
