"""Exception hierarchy."""


class ClickHomodyneError(Exception):
    """Base class for all library errors."""


class ArgumentError(ClickHomodyneError, ValueError):
    """An argument violates an operation's precondition."""


class TruncationError(ClickHomodyneError):
    """A truncated Fock representation lost more norm than its budget allows."""


class QuadratureError(ClickHomodyneError):
    """Numerical integration did not reach the requested stability."""


class NumericalError(ClickHomodyneError, ArithmeticError):
    """A computed probability is negative beyond roundoff."""
