"""
OPTOTTO ERROR TYPES

Responsibilities:
- Exception hierarchy shared by every package
- Builtin bases kept (ValueError / RuntimeError) so callers can catch broadly

No I/O.
"""

from typing import List, Optional


class OptomechError(Exception):
    """Base class for all simulator errors."""


# =======================
# PHYSICS DOMAIN
# =======================

class DomainError(OptomechError, ValueError):
    """Parameters outside the region where a formula or transformation exists."""


class DimensionMismatchError(OptomechError, ValueError):
    """Operator and state dimensions disagree."""


class InvalidStateError(OptomechError, ValueError):
    """Matrix fails the density-matrix invariants (Hermitian, unit trace, PSD)."""


class ScheduleDomainError(OptomechError, ValueError):
    """Time outside a detuning schedule, or malformed segments."""


class TimescaleError(OptomechError, ValueError):
    """A strict inequality of the timescale hierarchy is violated."""

    def __init__(self, message: str, report=None):
        super().__init__(message)
        self.report = report


# =======================
# NUMERICS
# =======================

class MeanFieldError(OptomechError, RuntimeError):
    """Mean-field fixed point did not converge."""


class ConstraintError(OptomechError, RuntimeError):
    """Bogoliubov constraint residual above tolerance."""


class IntegratorError(OptomechError, RuntimeError):
    """Trace drift past the limit or non-finite state."""


# =======================
# CONFIGURATION
# =======================

class ConfigParseError(OptomechError):
    """Configuration file missing, unreadable or structurally invalid."""


class ConfigValidationError(OptomechError):
    """One or more physics or schema checks failed; all messages are kept."""

    def __init__(self, errors: List[str], warnings: Optional[List[str]] = None):
        self.errors = list(errors)
        self.warnings = list(warnings or [])
        super().__init__("; ".join(self.errors))
