"""Exception hierarchy shared by every layer of the package."""


class IFSMeasureError(Exception):
    """Base class for all errors raised by ifsmeasure."""


class PrecisionError(IFSMeasureError, ValueError):
    pass


class DomainError(IFSMeasureError, ArithmeticError):
    """A map or observable was evaluated outside its domain (pole, log of zero)."""


class ValidationError(IFSMeasureError, ValueError):
    """The system or its weights do not satisfy the hypotheses of the algorithm."""


class UnsupportedConfiguration(IFSMeasureError, ValueError):
    """The requested routine does not apply to this kind of system."""


class SignConditionError(ValidationError):
    pass


class BudgetExceeded(IFSMeasureError, RuntimeError):
    pass


class ConvergenceError(IFSMeasureError, RuntimeError):
    pass
