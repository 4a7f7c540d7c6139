"""
Config package for OPTOTTO application.
"""

from .settings import (
    APP_NAME,
    APP_TITLE,
    APP_VERSION,
    DROP_TOLERANCE,
    DT_FAST,
    DT_SLOW,
    TRACE_DRIFT_LIMIT,
    TRACE_DRIFT_TARGET,
    VALID_SCENARIOS,
    VALID_FORMATS,
    CSV_FLOAT_FORMAT,
    EXIT_OK,
    EXIT_PARSE_ERROR,
    EXIT_VALIDATION_ERROR,
    EXIT_RUNTIME_ERROR,
    get_full_cycle_parameters,
    get_reduced_cycle_parameters,
    is_scenario_valid,
    is_format_valid,
)

__all__ = [
    "APP_NAME",
    "APP_TITLE",
    "APP_VERSION",
    "DROP_TOLERANCE",
    "DT_FAST",
    "DT_SLOW",
    "TRACE_DRIFT_LIMIT",
    "TRACE_DRIFT_TARGET",
    "VALID_SCENARIOS",
    "VALID_FORMATS",
    "CSV_FLOAT_FORMAT",
    "EXIT_OK",
    "EXIT_PARSE_ERROR",
    "EXIT_VALIDATION_ERROR",
    "EXIT_RUNTIME_ERROR",
    "get_full_cycle_parameters",
    "get_reduced_cycle_parameters",
    "is_scenario_valid",
    "is_format_valid",
]
