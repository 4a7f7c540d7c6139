"""
OPTOTTO TIMESCALE HIERARCHY

Checks 1/τ₄ < γ ≪ 1/τ₂ < κ < 1/τ₁,₃ ≪ g ≪ ω_m for a cycle configuration.

Strict "<" fails at ratio ≤ 1 and warns below MARGINAL_RATIO.
"≪" fails below MARGINAL_RATIO and warns below MUCH_LESS_RATIO.
"""

import logging
from dataclasses import dataclass, field
from typing import List

from config.settings import MARGINAL_RATIO, MUCH_LESS_RATIO
from utils.errors import TimescaleError

logger = logging.getLogger(__name__)

STRICT = "<"
MUCH_LESS = "<<"

PASS = "pass"
WARN = "warn"
FAIL = "fail"


@dataclass(frozen=True)
class TimescaleCheck:
    name: str
    kind: str
    ratio: float
    status: str


@dataclass
class TimescaleReport:
    checks: List[TimescaleCheck] = field(default_factory=list)

    @property
    def errors(self) -> List[str]:
        return [_describe(check) for check in self.checks if check.status == FAIL]

    @property
    def warnings(self) -> List[str]:
        return [_describe(check) for check in self.checks if check.status == WARN]

    @property
    def passed(self) -> bool:
        return not self.errors


def _describe(check: TimescaleCheck) -> str:
    return f"{check.name} ({check.kind}) has ratio {check.ratio:.3g}"


def _classify(kind: str, ratio: float) -> str:
    if kind == STRICT:
        if ratio <= 1.0:
            return FAIL
        return WARN if ratio < MARGINAL_RATIO else PASS
    if ratio < MARGINAL_RATIO:
        return FAIL
    return WARN if ratio < MUCH_LESS_RATIO else PASS


def _ratio(larger: float, smaller: float) -> float:
    if smaller == 0.0:
        return float("inf")
    return larger / smaller


def timescale_report(g: float, kappa: float, gamma: float, tau, omega_m: float = 1.0) -> TimescaleReport:
    """Classify every link of the hierarchy without raising."""
    tau_1, tau_2, tau_3, tau_4 = tau
    links = [
        ("1/tau_4 < gamma", STRICT, gamma * tau_4),
        ("gamma << 1/tau_2", MUCH_LESS, _ratio(1.0, gamma * tau_2)),
        ("1/tau_2 < kappa", STRICT, kappa * tau_2),
        ("kappa < 1/tau_1", STRICT, _ratio(1.0, kappa * tau_1)),
        ("kappa < 1/tau_3", STRICT, _ratio(1.0, kappa * tau_3)),
        ("1/tau_1 << g", MUCH_LESS, g * tau_1),
        ("1/tau_3 << g", MUCH_LESS, g * tau_3),
        ("g << omega_m", MUCH_LESS, _ratio(omega_m, g)),
    ]
    report = TimescaleReport()
    for name, kind, ratio in links:
        report.checks.append(TimescaleCheck(name, kind, ratio, _classify(kind, ratio)))
    return report


def validate_timescales(cfg) -> TimescaleReport:
    """
    Check a CycleConfig against the rate hierarchy.

    Returns:
        The report; warnings are logged.

    Raises:
        TimescaleError: If any link fails, with the report attached.
    """
    params = cfg.params
    report = timescale_report(params.g, params.kappa, params.gamma, cfg.tau)
    for message in report.warnings:
        logger.warning("Timescale hierarchy marginal: %s", message)
    if not report.passed:
        raise TimescaleError("Timescale hierarchy violated: " + "; ".join(report.errors), report)
    return report
