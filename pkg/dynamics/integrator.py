"""
OPTOTTO RK4 INTEGRATOR

Responsibilities:
- Generic fixed-step fourth-order Runge-Kutta core
- Density-matrix evolution with time-dependent H(t)
- Trace-drift and finiteness monitoring
- Sampled observable series and optional snapshots

Never renormalizes mid-run; the final state is renormalized only when the
accumulated drift stays below TRACE_DRIFT_LIMIT.
"""

import logging
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Mapping, Optional, Sequence, Tuple, Union

import numpy as np
import pandas as pd
import scipy.sparse.linalg as spla

from config.settings import (
    EXPECTATION_IMAG_TOLERANCE,
    POPULATION_FLOOR,
    SPECTRUM_DENSE_MAX_DIM,
    STEP_WARNING_PRODUCT,
    TRACE_DRIFT_LIMIT,
    TRACE_DRIFT_TARGET,
)
from dynamics.lindblad import Dissipator, LindbladGenerator
from fock.operators import OperatorMatrix
from fock.states import DensityMatrix
from utils.errors import DimensionMismatchError, IntegratorError

logger = logging.getLogger(__name__)

# Series names checked against POPULATION_FLOOR
POPULATION_SERIES = ("n_a", "n_b", "N_A", "N_B")


@dataclass
class Trajectory:
    """Sampled time series of one run."""

    times: List[float] = field(default_factory=list)
    observables: Dict[str, List[float]] = field(default_factory=dict)
    snapshots: List[Tuple[float, DensityMatrix]] = field(default_factory=list)
    final_state: Optional[DensityMatrix] = None
    max_trace_drift: float = 0.0
    diagnostics: List[str] = field(default_factory=list)

    def series(self, name: str) -> np.ndarray:
        return np.asarray(self.observables[name], dtype=float)

    def record(self, t: float, values: Mapping[str, float]):
        if self.times and t <= self.times[-1]:
            raise IntegratorError(f"Sample time {t} does not advance past {self.times[-1]}")
        self.times.append(t)
        for name, value in values.items():
            self.observables.setdefault(name, []).append(value)

    def to_frame(self) -> pd.DataFrame:
        frame = pd.DataFrame({"t": self.times})
        for name, values in self.observables.items():
            frame[name] = values
        return frame


# =======================
# GENERIC CORE
# =======================

def rk4_integrate(
    rhs: Callable[[float, np.ndarray], np.ndarray],
    y0: np.ndarray,
    t0: float,
    t1: float,
    dt: float,
    on_step: Optional[Callable[[int, float, np.ndarray], None]] = None,
) -> np.ndarray:
    """
    Classic RK4 from t0 to t1; the step is shrunk so t1 is hit exactly.

    Args:
        rhs: f(t, y).
        y0: Initial value; not modified.
        t0, t1: Interval, t1 ≥ t0.
        dt: Requested step, positive.
        on_step: Called as on_step(step, t, y) after every step.

    Returns:
        y(t1).

    Raises:
        IntegratorError: On a non-positive step or a non-finite value.
    """
    if not dt > 0:
        raise IntegratorError(f"Step size must be positive (got {dt})")
    if t1 < t0:
        raise IntegratorError(f"Integration interval reversed: {t0} > {t1}")
    steps = max(1, int(np.ceil((t1 - t0) / dt - 1e-9)))
    h = (t1 - t0) / steps
    y = np.array(y0, copy=True)
    if t1 == t0:
        return y
    for step in range(1, steps + 1):
        t = t0 + (step - 1) * h
        k1 = rhs(t, y)
        k2 = rhs(t + 0.5 * h, y + 0.5 * h * k1)
        k3 = rhs(t + 0.5 * h, y + 0.5 * h * k2)
        k4 = rhs(t + h, y + h * k3)
        y = y + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        if not np.isfinite(y).all():
            raise IntegratorError(f"Non-finite state at t={t + h:.6g}")
        if on_step is not None:
            on_step(step, t0 + step * h, y)
    return y


# =======================
# DENSITY-MATRIX EVOLUTION
# =======================

class _HamiltonianCache:
    """Remembers the last few H(t) evaluations; RK4 revisits t+h on the next step."""

    def __init__(self, H_of_t: Callable[[float], OperatorMatrix], generator: LindbladGenerator, size: int = 4):
        self._H_of_t = H_of_t
        self._generator = generator
        self._size = size
        self._entries: Dict[float, object] = {}

    def __call__(self, t: float):
        K = self._entries.get(t)
        if K is None:
            K = self._generator.effective_hamiltonian(self._H_of_t(t))
            if len(self._entries) >= self._size:
                self._entries.pop(next(iter(self._entries)))
            self._entries[t] = K
        return K


def spectral_radius(H: OperatorMatrix) -> float:
    """Largest |eigenvalue| of a Hermitian operator."""
    if H.dim <= SPECTRUM_DENSE_MAX_DIM:
        return float(np.max(np.abs(np.linalg.eigvalsh(H.toarray()))))
    largest = spla.eigsh(H.data, k=1, which="LM", return_eigenvectors=False)
    return float(abs(largest[0]))


def _measure(rho: np.ndarray, observables: Mapping[str, OperatorMatrix]) -> Dict[str, float]:
    values = {}
    for name, obs in observables.items():
        value = obs.trace_with(rho)
        if abs(value.imag) > EXPECTATION_IMAG_TOLERANCE * max(1.0, abs(value.real)):
            logger.debug("Observable %s has imaginary part %.3e", name, value.imag)
        values[name] = float(value.real)
    values["purity"] = float(np.real(np.vdot(rho, rho)))
    return values


def rk4_evolve(
    rho0: DensityMatrix,
    H_of_t: Callable[[float], OperatorMatrix],
    dissipators: Sequence[Dissipator],
    t0: float,
    t1: float,
    dt: float,
    observables: Union[Mapping[str, OperatorMatrix], Callable[[float], Mapping[str, OperatorMatrix]], None] = None,
    sample_every: Optional[float] = None,
    snapshot_times: Sequence[float] = (),
    on_step: Optional[Callable[[float, np.ndarray], None]] = None,
    trajectory: Optional[Trajectory] = None,
    omega_max: Optional[float] = None,
) -> Trajectory:
    """
    Integrate the master equation with H re-evaluated at RK4 stage times.

    Args:
        rho0: Initial state.
        H_of_t: Hamiltonian at absolute time t.
        dissipators: Lindblad terms, time independent.
        t0, t1: Interval.
        dt: Requested step.
        observables: Named operators sampled along the run, or a function of t
            returning them for time-dependent observables.
        sample_every: Sampling stride in time; defaults to every step.
        snapshot_times: Times at which full states are kept.
        on_step: Called as on_step(t, rho) after every step, with t0 first.
        trajectory: Existing trajectory to append to (the t0 sample is then skipped
            when it repeats the last recorded time).
        omega_max: Largest Hamiltonian frequency for the step-size warning;
            defaults to the spectral radius of H(t0).

    Returns:
        Trajectory whose final_state is ρ(t1).

    Raises:
        IntegratorError: Trace drift past TRACE_DRIFT_LIMIT or a non-finite state.
    """
    if observables is None:
        observables = {}
    fixed = {} if callable(observables) else dict(observables)
    for name, obs in fixed.items():
        if obs.dim != rho0.dim:
            raise DimensionMismatchError(f"Observable {name} has dimension {obs.dim}, state {rho0.dim}")
    generator = LindbladGenerator(dissipators, rho0.dim)
    effective = _HamiltonianCache(H_of_t, generator)
    traj = trajectory if trajectory is not None else Trajectory()

    scale = spectral_radius(H_of_t(t0)) if omega_max is None else omega_max
    if dt * scale > STEP_WARNING_PRODUCT:
        message = f"dt*omega_max = {dt * scale:.3g} exceeds {STEP_WARNING_PRODUCT} on [{t0:.6g}, {t1:.6g}]"
        logger.warning(message)
        traj.diagnostics.append(message)

    steps = max(1, int(np.ceil((t1 - t0) / dt - 1e-9)))
    h = (t1 - t0) / steps
    stride = 1 if sample_every is None else max(1, int(round(sample_every / h)))
    pending_snapshots = sorted(snapshot_times)
    rho_start = rho0.toarray()

    def sample(step: int, t: float, rho: np.ndarray):
        if not traj.times or t > traj.times[-1]:
            current = observables(t) if callable(observables) else fixed
            values = _measure(rho, current)
            for name in POPULATION_SERIES:
                if name in values and values[name] < POPULATION_FLOOR:
                    raise IntegratorError(f"Population {name}={values[name]:.3e} negative at t={t:.6g}")
            traj.record(t, values)
        while pending_snapshots and pending_snapshots[0] <= t + 0.5 * h:
            pending_snapshots.pop(0)
            traj.snapshots.append((t, _to_state(rho, rho0.dims)))

    def monitor(step: int, t: float, rho: np.ndarray):
        drift = abs(np.trace(rho).real - 1.0)
        traj.max_trace_drift = max(traj.max_trace_drift, drift)
        if drift > TRACE_DRIFT_LIMIT:
            raise IntegratorError(f"Trace drift {drift:.3e} at t={t:.6g}; reduce the step size")
        if on_step is not None:
            on_step(t, rho)
        if step % stride == 0 or step == steps:
            sample(step, t, rho)

    if on_step is not None:
        on_step(t0, rho_start)
    sample(0, t0, rho_start)
    rho_end = rk4_integrate(
        lambda t, rho: generator.apply(rho, effective(t)), rho_start, t0, t1, dt, on_step=monitor
    )

    if traj.max_trace_drift > TRACE_DRIFT_TARGET:
        message = f"Trace drift {traj.max_trace_drift:.3e} above target {TRACE_DRIFT_TARGET}"
        logger.warning(message)
        traj.diagnostics.append(message)
    rho_end = 0.5 * (rho_end + rho_end.conj().T)
    rho_end = rho_end / np.trace(rho_end).real
    traj.final_state = _to_state(rho_end, rho0.dims)
    return traj


def _to_state(rho: np.ndarray, dims: Tuple[int, ...]) -> DensityMatrix:
    hermitian = 0.5 * (rho + rho.conj().T)
    return DensityMatrix.from_array(hermitian / np.trace(hermitian).real, dims)
