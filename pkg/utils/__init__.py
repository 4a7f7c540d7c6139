"""
Utils package for OPTOTTO application.
"""

from .errors import (
    OptomechError,
    DomainError,
    DimensionMismatchError,
    InvalidStateError,
    ScheduleDomainError,
    TimescaleError,
    MeanFieldError,
    ConstraintError,
    IntegratorError,
    ConfigParseError,
    ConfigValidationError,
)
from .progress import ProgressReporter, configure_logging

__all__ = [
    "OptomechError",
    "DomainError",
    "DimensionMismatchError",
    "InvalidStateError",
    "ScheduleDomainError",
    "TimescaleError",
    "MeanFieldError",
    "ConstraintError",
    "IntegratorError",
    "ConfigParseError",
    "ConfigValidationError",
    "ProgressReporter",
    "configure_logging",
]
