"""Exception hierarchy shared by the library and the command line."""


class RingSpreadError(Exception):
    """Base class for all errors raised by ringspread."""

    exit_code = 1


class ParameterRangeError(RingSpreadError, ValueError):
    exit_code = 2


class SpecParseError(RingSpreadError, ValueError):
    exit_code = 2


class NormalizationError(RingSpreadError, ValueError):
    """Coefficients are not unit-norm and rescaling was not requested."""

    exit_code = 2


class DegenerateStateError(RingSpreadError, ValueError):
    """The requested state has (numerically) zero norm."""

    exit_code = 3


class NumericalDomainError(RingSpreadError, ArithmeticError):
    """Overflow, non-finite integrand values and similar failures."""

    exit_code = 3


class ContractViolationError(RingSpreadError, ValueError):
    """A caller-side precondition (e.g. periodicity) was not met."""

    exit_code = 3
