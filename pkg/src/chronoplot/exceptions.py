from typing import Any, Optional


class ChronoplotError(Exception):
    def __init__(self, message='chronoplot error.', errors=None):
        super().__init__(message)
        self.errors = errors


class ConfigurationError(ChronoplotError):
    def __init__(self, message='Invalid configuration.', errors=None):
        super().__init__(message, errors)


class IncompatibleGranularity(ChronoplotError):
    def __init__(self, message='Granularities are not related in the calendar lattice.', errors=None):
        super().__init__(message, errors)


class ArgumentError(ChronoplotError, ValueError):
    def __init__(self, message='Argument out of range.', errors=None):
        super().__init__(message, errors)


class SchemaError(ChronoplotError):
    def __init__(self, message='Declared column is missing.', errors=None):
        super().__init__(message, errors)


class IngestionError(ChronoplotError):
    """
    Raised when a value in an input file cannot be parsed.

    The offending line number (1-based, header included) is kept on
    ``line`` so callers can report it.
    """
    def __init__(
        self,
        message: str = 'Could not parse input.',
        line: Optional[int] = None,
        errors: Optional[Any] = None
    ) -> None:
        if line is not None:
            message = f'line {line}: {message}'
        super().__init__(message, errors)
        self.line = line


class ScaleError(ChronoplotError):
    def __init__(self, message='Layers cannot share a time scale.', errors=None):
        super().__init__(message, errors)


class SpecError(ChronoplotError):
    def __init__(self, message='Invalid plot specification.', errors=None):
        super().__init__(message, errors)


class RenderError(ChronoplotError):
    def __init__(self, message='Cannot project a degenerate domain.', errors=None):
        super().__init__(message, errors)
