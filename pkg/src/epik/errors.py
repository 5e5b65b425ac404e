"""Exception types shared across the package."""


class EpikError(Exception):
    """Base class for every error raised by epik."""


class ParameterError(EpikError, ValueError):
    """Rejected parameter set: bad prime, out-of-range knob, unknown preset."""


class DomainError(EpikError, ValueError):
    """An operation was called outside its mathematical domain."""


class PrecisionError(EpikError, ArithmeticError):
    """The working precision is too low to determine the requested digits."""


class ConvergenceError(EpikError, ArithmeticError):
    """An iteration did not settle within its iteration cap."""


class DecodeError(EpikError, ValueError):
    """Malformed or truncated wire data."""
