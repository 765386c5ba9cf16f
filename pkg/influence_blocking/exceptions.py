"""Exceptions shared by every app in the project."""
from django.core.exceptions import ImproperlyConfigured


class InfluenceBlockingError(Exception):
    """Base class for all errors raised by the library."""


class ParameterError(InfluenceBlockingError, ValueError):
    """A parameter is out of its admissible range."""


class GraphParseError(ParameterError):
    def __init__(self, message, line_number=None):
        self.line_number = line_number
        if line_number is not None:
            message = f'line {line_number}: {message}'
        super().__init__(message)


class UsageError(InfluenceBlockingError):
    """Arguments are individually valid but do not belong together."""


class ConfigurationError(InfluenceBlockingError, ImproperlyConfigured):
    pass


class GuardError(InfluenceBlockingError):
    """An exhaustive enumeration would exceed its size guard."""


class SolverError(InfluenceBlockingError):
    pass
