"""
OPTOTTO MODEL PARAMETERS

Responsibilities:
- Physical parameter set with collected validation
- Optional pump block and the self-consistent mean field
- Pump re-solution at constant intracavity amplitude

Internal units: omega_m = hbar = 1. Rates, detunings and couplings are
dimensionless multiples of omega_m; `omega_m` itself is carried in rad/s only
for SI conversions (zero-point displacement, temperatures).
"""

import logging
import math
from dataclasses import dataclass
from typing import List, Optional

from scipy.constants import hbar

from config.settings import (
    MEAN_FIELD_MAX_ITERATIONS,
    MEAN_FIELD_RELAXATION,
    MEAN_FIELD_TOLERANCE,
)
from utils.errors import DomainError, MeanFieldError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class PumpBlock:
    """Pump and cavity inputs; g0, omega_c, omega_p in units of omega_m, mass in kg."""

    g0: float
    alpha_in: float
    omega_c: float
    omega_p: float
    mass: float = 1e-15


def validate_system_params(
    omega_m: float,
    delta: float,
    g: float,
    kappa: float,
    gamma: float,
    nbar_a: float,
    nbar_b: float,
    pump: Optional[PumpBlock] = None,
) -> List[str]:
    """Collect every violated parameter invariant as a message."""
    errors = []
    if not omega_m > 0:
        errors.append(f"omega_m must be positive (got {omega_m})")
    if not delta < 0:
        errors.append(f"delta must be negative, red-detuned regime (got {delta})")
    if not g >= 0:
        errors.append(f"g must be non-negative (got {g})")
    if not kappa >= 0:
        errors.append(f"kappa must be non-negative (got {kappa})")
    if not gamma >= 0:
        errors.append(f"gamma must be non-negative (got {gamma})")
    if not nbar_a >= 0:
        errors.append(f"nbar_a must be non-negative (got {nbar_a})")
    if not nbar_b >= 0:
        errors.append(f"nbar_b must be non-negative (got {nbar_b})")
    if pump is not None:
        if not pump.mass > 0:
            errors.append(f"pump mass must be positive (got {pump.mass})")
        if not pump.g0 >= 0:
            errors.append(f"pump g0 must be non-negative (got {pump.g0})")
    return errors


@dataclass(frozen=True)
class SystemParams:
    """All physical parameters of the linearized two-mode model."""

    delta: float
    g: float
    kappa: float
    gamma: float
    nbar_a: float = 0.0
    nbar_b: float = 0.0
    omega_m: float = 1.0
    pump: Optional[PumpBlock] = None

    def __post_init__(self):
        errors = validate_system_params(
            self.omega_m, self.delta, self.g, self.kappa, self.gamma, self.nbar_a, self.nbar_b, self.pump
        )
        if errors:
            raise DomainError("; ".join(errors))

    def with_delta(self, delta: float) -> "SystemParams":
        return SystemParams(delta, self.g, self.kappa, self.gamma, self.nbar_a, self.nbar_b, self.omega_m, self.pump)

    def to_dict(self) -> dict:
        data = {
            "omega_m": self.omega_m,
            "delta": self.delta,
            "g": self.g,
            "kappa": self.kappa,
            "gamma": self.gamma,
            "nbar_a": self.nbar_a,
            "nbar_b": self.nbar_b,
        }
        if self.pump is not None:
            data["pump"] = {
                "g0": self.pump.g0,
                "alpha_in": self.pump.alpha_in,
                "omega_c": self.pump.omega_c,
                "omega_p": self.pump.omega_p,
                "mass": self.pump.mass,
            }
        return data


@dataclass(frozen=True)
class MeanFieldState:
    """Classical intracavity amplitude and normalized mirror displacement."""

    alpha: float
    beta: float
    x_zpt: float
    detuning: float
    iterations: int = 0

    @property
    def displacement(self) -> float:
        """Mirror displacement x = β·x_zpt in meters."""
        return self.beta * self.x_zpt


def zero_point_displacement(mass: float, omega_m: float) -> float:
    """x_zpt = √(ħ/2mω_m) with omega_m in rad/s."""
    return math.sqrt(hbar / (2.0 * mass * omega_m))


def mean_field(alpha_in: complex, params: SystemParams) -> MeanFieldState:
    """
    Solve α = |α_in/Δ_p|, β = −g₀α², Δ_p = ω_p − ω_c − 2g₀β self-consistently.

    Args:
        alpha_in: Pump amplitude (phase is absorbed into the real α).
        params: Parameters carrying a pump block.

    Returns:
        MeanFieldState with the converged effective detuning.

    Raises:
        DomainError: If no pump block is present or Δ_p vanishes.
        MeanFieldError: If the damped iteration does not converge.
    """
    pump = params.pump
    if pump is None:
        raise DomainError("Mean field requires a pump block")
    x_zpt = zero_point_displacement(pump.mass, params.omega_m)
    bare = pump.omega_p - pump.omega_c
    amplitude = abs(alpha_in)
    if amplitude == 0.0:
        return MeanFieldState(alpha=0.0, beta=0.0, x_zpt=x_zpt, detuning=bare)

    detuning = bare
    for iteration in range(1, MEAN_FIELD_MAX_ITERATIONS + 1):
        if detuning == 0.0:
            raise DomainError("Effective detuning vanished during mean-field iteration")
        alpha = amplitude / abs(detuning)
        beta = -pump.g0 * alpha ** 2
        target = bare - 2.0 * pump.g0 * beta
        if abs(target - detuning) <= MEAN_FIELD_TOLERANCE * max(1.0, abs(detuning)):
            alpha = amplitude / abs(target)
            beta = -pump.g0 * alpha ** 2
            logger.debug("Mean field converged after %d iterations", iteration)
            return MeanFieldState(alpha=alpha, beta=beta, x_zpt=x_zpt, detuning=target, iterations=iteration)
        detuning = (1.0 - MEAN_FIELD_RELAXATION) * detuning + MEAN_FIELD_RELAXATION * target

    raise MeanFieldError(f"Mean field did not converge in {MEAN_FIELD_MAX_ITERATIONS} iterations")


def mean_field_residual(state: MeanFieldState, pump: PumpBlock) -> float:
    """|ω_p − ω_c − 2g₀β − Δ_p| at a returned state."""
    return abs(pump.omega_p - pump.omega_c - 2.0 * pump.g0 * state.beta - state.detuning)


def coupling_from_mean_field(state: MeanFieldState, pump: PumpBlock) -> float:
    """Dimensionless linearized coupling g = g₀α."""
    return pump.g0 * state.alpha


def pump_amplitude_for_detuning(delta: float, state: MeanFieldState) -> float:
    """Pump amplitude that holds α (hence g) fixed at effective detuning delta."""
    if delta == 0.0:
        raise DomainError("Detuning must be non-zero")
    return state.alpha * abs(delta)
