"""Exception types shared across the package."""


class RepfieldError(Exception):
    """Base class for all package errors."""


class RingMismatchError(RepfieldError, TypeError):
    """Operands live over different rings, precisions or ambient dimensions."""


class PreconditionError(RepfieldError, ValueError):
    """An input violates a documented precondition."""


class ResourceError(RepfieldError):
    """An enumeration would exceed the configured cap.

    The ``cap`` and ``required`` attributes let callers report both numbers.
    """

    def __init__(self, message, cap=None, required=None):
        super().__init__(message)
        self.cap = cap
        self.required = required


class ConfigurationError(RepfieldError, ValueError):
    """A configuration file or value is malformed.

    ``key`` names the offending configuration key when one is known.
    """

    def __init__(self, message, key=None):
        if key is not None:
            message = f"{key}: {message}"
        super().__init__(message)
        self.key = key
