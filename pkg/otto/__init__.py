"""
Otto package for OPTOTTO application.
"""

from .analytic import (
    PolaritonCycleResult,
    SecondOrderPerformance,
    analytic_node_energies,
    second_order_performance,
    work_efficiency_analytic,
)
from .cycle_service import CycleConfig, CycleRecord, CycleService, NodeRecord, StrokeRecord, run_cycle
from .ledger import BareLedger, HeatWork, LedgerAccumulator, StrokeLedger, bare_decomposition, heat_work_integrals
from .sweep import SweepMap, sweep_map
from .timescales import TimescaleCheck, TimescaleReport, timescale_report, validate_timescales

__all__ = [
    "PolaritonCycleResult",
    "SecondOrderPerformance",
    "analytic_node_energies",
    "second_order_performance",
    "work_efficiency_analytic",
    "CycleConfig",
    "CycleRecord",
    "CycleService",
    "NodeRecord",
    "StrokeRecord",
    "run_cycle",
    "BareLedger",
    "HeatWork",
    "LedgerAccumulator",
    "StrokeLedger",
    "bare_decomposition",
    "heat_work_integrals",
    "SweepMap",
    "sweep_map",
    "TimescaleCheck",
    "TimescaleReport",
    "timescale_report",
    "validate_timescales",
]
