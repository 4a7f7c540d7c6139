"""
Model package for OPTOTTO application.
"""

from .hamiltonian import HamiltonianTerms, build_hamiltonian, hamiltonian_terms
from .params import (
    MeanFieldState,
    PumpBlock,
    SystemParams,
    coupling_from_mean_field,
    mean_field,
    mean_field_residual,
    pump_amplitude_for_detuning,
    validate_system_params,
    zero_point_displacement,
)
from .schedule import DetuningSchedule, ScheduleSegment, cycle_schedule, schedule_eval

__all__ = [
    "HamiltonianTerms",
    "build_hamiltonian",
    "hamiltonian_terms",
    "MeanFieldState",
    "PumpBlock",
    "SystemParams",
    "coupling_from_mean_field",
    "mean_field",
    "mean_field_residual",
    "pump_amplitude_for_detuning",
    "validate_system_params",
    "zero_point_displacement",
    "DetuningSchedule",
    "ScheduleSegment",
    "cycle_schedule",
    "schedule_eval",
]
