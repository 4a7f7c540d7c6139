"""
OPTOTTO SINGLE-MODE POLARITON EVOLUTION

Responsibilities:
- Reduced master equation of polariton B in a squeezed reservoir
- Quadrature measurements on single-mode states
- Deviation of a number distribution from the thermal law

    dρ/dt = −i[H_B, ρ] + Γ(N̄+1)D[B̂]ρ + ΓN̄ D[B̂†]ρ + ΓM̄ J[B̂]ρ + ΓM̄* J[B̂†]ρ
    D[x]ρ = xρx† − ½{x†x, ρ},   J[x]ρ = xρx − ½xxρ − ½ρxx

In the rotating frame H_B is dropped and M̄ is constant; in the lab frame
H_B = ω_B B̂†B̂ is kept and the coefficient turns at 2ω_B.
"""

import logging
from typing import Callable, Optional

import numpy as np

from config.settings import (
    SINGLE_MODE_CUTOFF_OFFSET,
    SINGLE_MODE_CUTOFF_SLOPE,
    TRACE_DRIFT_LIMIT,
    TRACE_DRIFT_TARGET,
)
from dynamics.integrator import Trajectory, rk4_integrate
from fock.operators import annihilation_op
from fock.states import DensityMatrix, NumberDistribution
from squeezed_bath.effective import EffectiveBath, QuadratureStats
from utils.errors import DimensionMismatchError, DomainError, IntegratorError

logger = logging.getLogger(__name__)

ROTATING = "rotating"
LAB = "lab"
VALID_FRAMES = (ROTATING, LAB)


def _check_frame(frame: str):
    if frame not in VALID_FRAMES:
        raise DomainError(f"Unknown frame '{frame}'; expected one of {VALID_FRAMES}")


def _single_mode(rho: DensityMatrix) -> int:
    if len(rho.dims) != 1:
        raise DimensionMismatchError(f"Expected a single-mode state, got dims {rho.dims}")
    return rho.dims[0] - 1


def required_cutoff(bath: EffectiveBath) -> int:
    """Smallest n_max deemed adequate for the bath population."""
    return int(np.ceil(SINGLE_MODE_CUTOFF_SLOPE * bath.Nbar_B + SINGLE_MODE_CUTOFF_OFFSET))


def _phase(t: float, omega_B: float, frame: str) -> float:
    return omega_B * t if frame == LAB else 0.0


def quadrature_variances(rho_B: DensityMatrix, t: float, omega_B: float, frame: str = ROTATING) -> QuadratureStats:
    """
    ⟨X̂²⟩ and ⟨Ŷ²⟩ with X̂ = (B̂e^{iφ} + B̂†e^{−iφ})/√2, Ŷ = (B̂e^{iφ} − B̂†e^{−iφ})/(i√2).

    φ = ω_B t in the lab frame and 0 in the rotating frame. Second moments are
    not centred; the steady state has zero quadrature means.
    """
    _check_frame(frame)
    n_max = _single_mode(rho_B)
    return _quadratures(rho_B.toarray(), n_max, _phase(t, omega_B, frame))


def _quadratures(rho: np.ndarray, n_max: int, phase: float) -> QuadratureStats:
    lowering = annihilation_op(n_max).data * np.exp(1j * phase)
    raising = lowering.conj().T
    X = (lowering + raising) / np.sqrt(2.0)
    Y = (lowering - raising) / (1j * np.sqrt(2.0))
    var_X = np.trace((X @ X) @ rho).real
    var_Y = np.trace((Y @ Y) @ rho).real
    return QuadratureStats(float(var_X), float(var_Y))


def thermal_deviation_chi2(dist: NumberDistribution, nbar: float) -> float:
    """
    Σ_n (p_n − q_n)²/q_n against the geometric law q_n ∝ n̄ⁿ/(n̄+1)ⁿ⁺¹.

    The reference law is truncated to the support of `dist` and renormalized.
    """
    if nbar < 0:
        raise DomainError(f"Mean occupation must be non-negative, got {nbar}")
    levels = np.arange(dist.probs.size)
    if nbar == 0:
        reference = (levels == 0).astype(float)
    else:
        ratio = nbar / (nbar + 1.0)
        reference = ratio ** levels
        reference = reference / reference.sum()
    support = reference > 0
    if np.any(dist.probs[~support] > 0):
        return float("inf")
    return float(np.sum((dist.probs[support] - reference[support]) ** 2 / reference[support]))


class _EffectiveGenerator:
    """Right-hand side of the single-mode master equation on a dense ρ."""

    def __init__(self, bath: EffectiveBath, omega_B: float, n_max: int, frame: str):
        self.bath = bath
        self.omega_B = omega_B
        self.frame = frame
        self.b = annihilation_op(n_max).data.tocsr()
        self.bd = self.b.conj().T.tocsr()
        self.bb = (self.b @ self.b).tocsr()
        self.bdbd = (self.bd @ self.bd).tocsr()
        number = (self.bd @ self.b).tocsr()
        # truncated b b†, not n + 1, keeps the trace exact at the top level
        raised = (self.b @ self.bd).tocsr()
        loss = bath.Gamma_B * (bath.Nbar_B + 1.0)
        gain = bath.Gamma_B * bath.Nbar_B
        self.loss = loss
        self.gain = gain
        # anticommutator part of both D terms; H_B joins it in the lab frame
        K = -0.5j * (loss * number + gain * raised)
        if frame == LAB:
            K = K + omega_B * number
        self.K = K.tocsr()

    def squeezing(self, t: float) -> complex:
        coefficient = self.bath.Gamma_B * complex(self.bath.Mbar_B)
        if self.frame == LAB:
            coefficient *= np.exp(2j * self.omega_B * t)
        return coefficient

    def __call__(self, t: float, rho: np.ndarray) -> np.ndarray:
        # every term linear in ρ; b and b† are real, so ρb = (b†ρᵀ)ᵀ
        rho_dag = rho.conj().T
        out = -1j * (self.K @ rho - (self.K @ rho_dag).conj().T)
        out = out + self.loss * (self.b @ (self.b @ rho_dag).conj().T)
        out = out + self.gain * (self.bd @ (self.bd @ rho_dag).conj().T)
        rho_t = rho.T
        b_rho_b = self.b @ (self.bd @ rho_t).T
        rho_bb = (self.bdbd @ rho_t).T
        bd_rho_bd = self.bd @ (self.b @ rho_t).T
        rho_bdbd = (self.bb @ rho_t).T
        c = self.squeezing(t)
        # c J[B] + c* J[B†]
        squeeze = c * (b_rho_b - 0.5 * (self.bb @ rho) - 0.5 * rho_bb)
        squeeze = squeeze + np.conj(c) * (bd_rho_bd - 0.5 * (self.bdbd @ rho) - 0.5 * rho_bdbd)
        return out + squeeze


def evolve_effective_B(
    bath: EffectiveBath,
    omega_B: float,
    rho_B0: DensityMatrix,
    t: float,
    dt: float,
    frame: str = ROTATING,
    sample_every: Optional[float] = None,
    on_step: Optional[Callable[[float, np.ndarray], None]] = None,
) -> Trajectory:
    """
    Integrate the reduced polariton-B master equation from 0 to t.

    Samples N_B, X2, Y2 and purity. A cutoff below required_cutoff(bath) is
    accepted with a warning in the trajectory diagnostics.

    Raises:
        DomainError: On an unknown frame or a non-positive Γ_B.
        IntegratorError: Trace drift past TRACE_DRIFT_LIMIT or a non-finite state.
    """
    _check_frame(frame)
    if not bath.Gamma_B > 0:
        raise DomainError(f"Effective decay rate must be positive, got {bath.Gamma_B}")
    n_max = _single_mode(rho_B0)
    traj = Trajectory()
    needed = required_cutoff(bath)
    if n_max < needed:
        message = f"Single-mode cutoff {n_max} below {needed} for N_B={bath.Nbar_B:.4g}"
        logger.warning(message)
        traj.diagnostics.append(message)

    generator = _EffectiveGenerator(bath, omega_B, n_max, frame)
    number = generator.bd @ generator.b
    steps = max(1, int(np.ceil(t / dt - 1e-9)))
    h = t / steps
    stride = 1 if sample_every is None else max(1, int(round(sample_every / h)))

    def sample(time: float, rho: np.ndarray):
        quadratures = _quadratures(rho, n_max, _phase(time, omega_B, frame))
        traj.record(time, {
            "N_B": float(np.trace(number @ rho).real),
            "X2": quadratures.var_X,
            "Y2": quadratures.var_Y,
            "purity": float(np.real(np.vdot(rho, rho))),
        })

    def monitor(step: int, time: float, rho: np.ndarray):
        drift = abs(np.trace(rho).real - 1.0)
        traj.max_trace_drift = max(traj.max_trace_drift, drift)
        if drift > TRACE_DRIFT_LIMIT:
            raise IntegratorError(f"Trace drift {drift:.3e} at t={time:.6g}; reduce the step size")
        if on_step is not None:
            on_step(time, rho)
        if step % stride == 0 or step == steps:
            sample(time, rho)

    rho_start = rho_B0.toarray()
    if on_step is not None:
        on_step(0.0, rho_start)
    sample(0.0, rho_start)
    rho_end = rk4_integrate(generator, rho_start, 0.0, t, dt, on_step=monitor)

    if traj.max_trace_drift > TRACE_DRIFT_TARGET:
        message = f"Trace drift {traj.max_trace_drift:.3e} above target {TRACE_DRIFT_TARGET}"
        logger.warning(message)
        traj.diagnostics.append(message)
    rho_end = 0.5 * (rho_end + rho_end.conj().T)
    traj.final_state = DensityMatrix.from_array(rho_end / np.trace(rho_end).real, rho_B0.dims)
    return traj
