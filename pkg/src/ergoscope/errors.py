"""Exception hierarchy shared by all ergoscope modules."""


class ErgoscopeError(Exception):
    """Base class for library errors."""


class InvalidArgumentError(ErgoscopeError, ValueError):
    """An argument is outside its documented domain."""


class ShapeError(InvalidArgumentError):
    """A matrix does not have the shape of an N-mode covariance matrix."""


class InvalidStateError(ErgoscopeError, ValueError):
    """A covariance matrix violates the uncertainty relation.

    The offending :class:`~ergoscope.symplectic.ValidityReport` is kept on
    ``self.report``.
    """

    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


class UnsupportedStateError(ErgoscopeError, ValueError):
    """The quantity is only defined for pure states and got a mixed one."""


class NumericalError(ErgoscopeError, ArithmeticError):
    """A linear-algebra routine failed or produced non-physical output."""


class BudgetExceededError(ErgoscopeError, RuntimeError):
    """An exhaustive search would exceed the configured enumeration budget."""


class CovarianceParseError(ErgoscopeError, ValueError):
    """A covariance-matrix document could not be parsed.

    ``line`` and ``column`` are 1-based and ``None`` when the failure is
    structural rather than syntactic.
    """

    def __init__(self, message, line=None, column=None):
        super().__init__(message)
        self.line = line
        self.column = column
