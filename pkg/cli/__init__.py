"""
CLI package for OPTOTTO application.
"""

from .config_loader import BathSpec, GridAxis, RunConfig, SpectrumSpec, SweepSpec, parse_config, read_config_file
from .scenario_manager import ScenarioFailure, ScenarioManager, execute
from .validation_checks import run_checks

__all__ = [
    "BathSpec",
    "GridAxis",
    "RunConfig",
    "SpectrumSpec",
    "SweepSpec",
    "parse_config",
    "read_config_file",
    "ScenarioFailure",
    "ScenarioManager",
    "execute",
    "run_checks",
]
