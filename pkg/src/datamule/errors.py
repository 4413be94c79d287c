"""Exception types shared across the package."""


class DataMuleError(Exception):
    """Base class for all package errors."""


class InvalidParameterError(DataMuleError, ValueError):
    """A model or experiment parameter is outside its valid range."""


class DomainError(DataMuleError, ValueError):
    """An evaluation grid or argument does not cover the required support."""


class UnsupportedConfigurationError(DataMuleError):
    """A closed form was requested for a configuration it does not cover."""


class NumericalError(DataMuleError, ArithmeticError):
    """A numerical procedure produced a result outside its tolerance."""


class ContractViolation(DataMuleError, RuntimeError):
    """A caller broke an ordering or state precondition."""


class TraceParseError(DataMuleError, ValueError):
    """A trip-duration CSV row could not be parsed."""

    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line
