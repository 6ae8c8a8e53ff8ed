"""Exception hierarchy shared by every module."""


class TddError(Exception):
    """Base class for all library errors."""


class ValidationError(TddError, ValueError):
    """Input does not describe a valid two-qubit object."""


class NonHermitian(ValidationError):
    pass


class TraceNotOne(ValidationError):
    pass


class NotPositive(ValidationError):
    pass


class DomainError(ValidationError):
    """A constructor or closed form was called outside its parameter domain."""


class NotApplicable(TddError):
    """A closed form was requested for a state outside its family."""


class InvalidConfig(TddError, ValueError):
    pass


class DegenerateDenominator(TddError, ArithmeticError):
    pass


class ConsistencyError(TddError, ArithmeticError):
    """Two routes that must agree did not."""
