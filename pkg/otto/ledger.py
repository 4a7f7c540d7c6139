"""
OPTOTTO ENERGY LEDGER

Responsibilities:
- Heat and work integrals Q = ∫Tr[∂_tρ H]dt, W = ∫Tr[ρ ∂_tH]dt
- Streaming accumulation during integration (no stored snapshots)
- Bare-mode split of the heat into photon, phonon and correlation parts

Discretization between consecutive states k, k+1:
    dQ = Tr[(ρ_{k+1} − ρ_k)(H_k + H_{k+1})/2]
    dW = (t_{k+1} − t_k) Tr[(ρ_k + ρ_{k+1})/2 ∂_tH(t_mid)]
with the exact schedule slope at the interval midpoint. On a
piecewise-linear schedule H_{k+1} − H_k = (t_{k+1} − t_k)∂_tH(t_mid), so
dQ + dW = U_{k+1} − U_k and the ledger telescopes.
"""

import logging
from dataclasses import dataclass
from typing import Callable, Optional, Sequence, Tuple

import numpy as np

from config.settings import LEDGER_CLOSURE_TOLERANCE
from fock.operators import OperatorMatrix
from fock.states import DensityMatrix
from model.hamiltonian import HamiltonianTerms
from model.schedule import DetuningSchedule, schedule_eval
from utils.errors import IntegratorError

logger = logging.getLogger(__name__)

# Absolute floor for the stride checks, in units of hbar*omega_m
STRIDE_CHECK_FLOOR = 1e-9


@dataclass(frozen=True)
class HeatWork:
    Q: float
    W: float
    U_start: float
    U_end: float

    @property
    def delta_U(self) -> float:
        return self.U_end - self.U_start

    @property
    def closure_residual(self) -> float:
        return self.Q + self.W - self.delta_U


@dataclass(frozen=True)
class BareLedger:
    """Heat carried by the bare photon and phonon modes and by their correlations."""

    Q_a: float
    Q_b: float
    W_a: float
    corr: float

    @property
    def heat(self) -> float:
        return self.Q_a + self.Q_b + self.corr


@dataclass(frozen=True)
class StrokeLedger:
    totals: HeatWork
    bare: BareLedger

    @property
    def Q(self) -> float:
        return self.totals.Q

    @property
    def W(self) -> float:
        return self.totals.W

    @property
    def bare_residual(self) -> float:
        """Q − (Q_a + Q_b + corr); zero up to rounding."""
        return self.totals.Q - self.bare.heat


# =======================
# STREAMING ACCUMULATOR
# =======================

class LedgerAccumulator:
    """
    Accumulates the ledger of H₀(δ(t)) one state at a time.

    Per state only ⟨n̂_a⟩, ⟨n̂_b⟩, ⟨(â+â†)(b̂+b̂†)⟩ and ⟨∂_δH₀⟩ are kept:
    δ enters H₀ through −δ n̂_a alone and ∂_tH₀ = (dδ/dt)·∂_δH₀.
    """

    def __init__(self, terms: HamiltonianTerms, schedule: DetuningSchedule):
        self.terms = terms
        self.schedule = schedule
        self.ops = terms.ops
        self.g = terms.g
        self._unit_rate = terms.derivative(1.0)
        self._previous: Optional[Tuple[float, float, float, float, float, float]] = None
        self.U_start = 0.0
        self.Q = 0.0
        self.W = 0.0
        self.Q_a = 0.0
        self.Q_b = 0.0
        self.corr = 0.0
        self.count = 0

    @property
    def U_end(self) -> float:
        if self._previous is None:
            return self.U_start
        return self._energy(*self._previous[1:5])

    def _energy(self, delta: float, n_a: float, n_b: float, x: float) -> float:
        return -delta * n_a + n_b + self.g * x

    def update(self, t: float, rho: np.ndarray):
        delta = schedule_eval(self.schedule, t)
        n_a = self.ops.n_a.trace_with(rho).real
        n_b = self.ops.n_b.trace_with(rho).real
        x = self.ops.coupling.trace_with(rho).real
        response = self._unit_rate.trace_with(rho).real
        current = (t, delta, n_a, n_b, x, response)
        if self._previous is None:
            self.U_start = self._energy(delta, n_a, n_b, x)
        else:
            t_prev, delta_prev, n_a_prev, n_b_prev, x_prev, response_prev = self._previous
            rate = self.schedule.derivative(0.5 * (t + t_prev))
            work = rate * (t - t_prev) * 0.5 * (response + response_prev)
            heat_a = -0.5 * (delta + delta_prev) * (n_a - n_a_prev)
            heat_b = n_b - n_b_prev
            heat_corr = self.g * (x - x_prev)
            self.W += work
            self.Q_a += heat_a
            self.Q_b += heat_b
            self.corr += heat_corr
            self.Q += heat_a + heat_b + heat_corr
        self._previous = current
        self.count += 1

    def ledger(self) -> StrokeLedger:
        # W_a equals W: the photon term is the only time-dependent part of H₀
        return StrokeLedger(
            totals=HeatWork(self.Q, self.W, self.U_start, self.U_end),
            bare=BareLedger(self.Q_a, self.Q_b, self.W, self.corr),
        )


# =======================
# SNAPSHOT QUADRATURE
# =======================

def _integrate(
    snapshots: Sequence[Tuple[float, DensityMatrix]],
    H_of_t: Callable[[float], OperatorMatrix],
    dH_of_t: Callable[[float], OperatorMatrix],
) -> HeatWork:
    states = [(t, rho.toarray(), H_of_t(t)) for t, rho in snapshots]
    Q = 0.0
    W = 0.0
    for (t0, rho0, H0), (t1, rho1, H1) in zip(states, states[1:]):
        change = rho1 - rho0
        Q += 0.5 * (H0.trace_with(change).real + H1.trace_with(change).real)
        W += (t1 - t0) * 0.5 * dH_of_t(0.5 * (t0 + t1)).trace_with(rho0 + rho1).real
    U_start = states[0][2].trace_with(states[0][1]).real
    U_end = states[-1][2].trace_with(states[-1][1]).real
    return HeatWork(Q, W, U_start, U_end)


def heat_work_integrals(
    snapshots: Sequence[Tuple[float, DensityMatrix]],
    H_of_t: Callable[[float], OperatorMatrix],
    dH_of_t: Callable[[float], OperatorMatrix],
) -> HeatWork:
    """
    Q and W over time-ordered snapshots for an arbitrary H(t).

    Args:
        snapshots: (t, ρ) pairs in increasing time.
        H_of_t: Hamiltonian at t.
        dH_of_t: Exact ∂_tH at t, e.g. terms.derivative(schedule.derivative(t)).

    Raises:
        IntegratorError: If fewer than two snapshots are given, if Q + W misses
            ΔU by more than LEDGER_CLOSURE_TOLERANCE of |Q|+|W|, or if halving
            the stride moves Q or W by more than that.
    """
    if len(snapshots) < 2:
        raise IntegratorError("Heat and work need at least two snapshots")
    result = _integrate(snapshots, H_of_t, dH_of_t)
    scale = max(abs(result.Q) + abs(result.W), STRIDE_CHECK_FLOOR)
    if abs(result.closure_residual) > LEDGER_CLOSURE_TOLERANCE * scale:
        raise IntegratorError(
            f"Snapshot stride too coarse: Q + W misses the energy change by {result.closure_residual:.3e}"
        )
    if len(snapshots) >= 5:
        coarse_points = list(snapshots[::2])
        if coarse_points[-1][0] != snapshots[-1][0]:
            coarse_points.append(snapshots[-1])
        coarse = _integrate(coarse_points, H_of_t, dH_of_t)
        shift = max(abs(coarse.Q - result.Q), abs(coarse.W - result.W))
        if shift > LEDGER_CLOSURE_TOLERANCE * scale:
            raise IntegratorError(
                f"Snapshot stride too coarse: halving resolution moves the ledger by {shift:.3e}"
            )
    logger.debug("Ledger over %d snapshots: Q=%.6g W=%.6g", len(snapshots), result.Q, result.W)
    return result


def bare_decomposition(
    snapshots: Sequence[Tuple[float, DensityMatrix]],
    schedule: DetuningSchedule,
    terms: HamiltonianTerms,
) -> BareLedger:
    """
    Q_a = ∫Tr[∂_tρ_a H_a], Q_b = ∫Tr[∂_tρ_b H_b], W_a = ∫Tr[ρ_a ∂_tH_a] and
    corr = ∫Tr[∂_tρ V] over snapshots, with H_a = −δ(t)n̂_a, H_b = n̂_b, V = g(â+â†)(b̂+b̂†).
    """
    if len(snapshots) < 2:
        raise IntegratorError("Bare decomposition needs at least two snapshots")
    accumulator = LedgerAccumulator(terms, schedule)
    for t, rho in snapshots:
        accumulator.update(t, rho.toarray())
    return accumulator.ledger().bare
