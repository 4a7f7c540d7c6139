"""
OPTOTTO CYCLE SERVICE

Responsibilities:
- Cycle configuration with collected validation
- Four-stroke evolution of the full two-mode master equation
- Node energies, per-stroke heat/work ledgers and polariton bookkeeping
- Node number distributions and stroke-4 residuals
"""

import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

import pandas as pd

from config.settings import (
    DT_FAST,
    DT_SLOW,
    HOLD_STRIDE_KAPPA,
    SAMPLES_PER_STROKE,
    TAIL_MASS_WARNING,
)
from dynamics.integrator import Trajectory, rk4_evolve
from dynamics.lindblad import master_dissipators
from fock.operators import ModeId, OperatorMatrix, two_mode_operators
from fock.states import (
    DensityMatrix,
    NumberDistribution,
    number_distribution,
    partial_trace,
    product_state,
    thermal_state,
)
from model.hamiltonian import hamiltonian_terms
from model.params import SystemParams, mean_field, pump_amplitude_for_detuning
from model.schedule import cycle_schedule, schedule_eval
from normal_modes.bogoliubov import (
    BogoliubovMatrices,
    PolaritonBranch,
    bogoliubov_numeric,
    polariton_number_operator,
    thermal_polariton_populations,
)
from normal_modes.spectrum import polariton_frequencies, stability_check
from otto.ledger import LedgerAccumulator, StrokeLedger
from otto.timescales import TimescaleReport, timescale_report, validate_timescales
from utils.errors import DomainError
from utils.progress import ProgressReporter

logger = logging.getLogger(__name__)

STROKE_LABELS = ("ramp out", "hold at delta_f", "ramp back", "hold at delta_i")
TRAJECTORY_COLUMNS = ("t", "n_a", "n_b", "N_A", "N_B", "energy", "purity", "stroke")
# Cached Hamiltonians per detuning; holds reuse one entry
HAMILTONIAN_CACHE_SIZE = 8


@dataclass(frozen=True)
class CycleConfig:
    """One Otto cycle; params.delta is replaced by delta_i."""

    params: SystemParams
    delta_i: float
    delta_f: float
    tau: Tuple[float, float, float, float]
    cutoff_a: int
    cutoff_b: int
    dt_fast: float = DT_FAST
    dt_slow: float = DT_SLOW
    samples_per_ramp: int = SAMPLES_PER_STROKE

    def __post_init__(self):
        tau = tuple(float(value) for value in self.tau)
        errors = []
        if not self.delta_i < self.delta_f < 0:
            errors.append(f"need delta_i < delta_f < 0 (got {self.delta_i}, {self.delta_f})")
        if self.delta_i == self.delta_f:
            errors.append("delta_i == delta_f is a zero-area cycle")
        for name, value in (("delta_i", self.delta_i), ("delta_f", self.delta_f)):
            if value < 0 and not stability_check(value, self.params.g):
                errors.append(f"{name}={value} is unstable for g={self.params.g}")
        if len(tau) != 4 or any(not value > 0 for value in tau):
            errors.append(f"tau must be four positive durations (got {self.tau})")
        if self.cutoff_a < 1 or self.cutoff_b < 1:
            errors.append(f"cutoffs must be >= 1 (got {self.cutoff_a}, {self.cutoff_b})")
        if not (self.dt_fast > 0 and self.dt_slow > 0):
            errors.append(f"time steps must be positive (got {self.dt_fast}, {self.dt_slow})")
        if self.samples_per_ramp < 1:
            errors.append(f"samples_per_ramp must be >= 1 (got {self.samples_per_ramp})")
        if errors:
            raise DomainError("; ".join(errors))
        object.__setattr__(self, "tau", tau)
        object.__setattr__(self, "params", self.params.with_delta(self.delta_i))

    @classmethod
    def from_parameter_set(cls, values: dict, **overrides) -> "CycleConfig":
        """Build from a settings preset such as REDUCED_CYCLE_PARAMETERS."""
        values = {**values, **overrides}
        params = SystemParams(
            delta=values["delta_i"],
            g=values["g"],
            kappa=values["kappa"],
            gamma=values["gamma"],
            nbar_a=values.get("nbar_a", 0.0),
            nbar_b=values.get("nbar_b", 0.0),
        )
        cutoff = values.get("cutoff", 12)
        return cls(
            params=params,
            delta_i=values["delta_i"],
            delta_f=values["delta_f"],
            tau=tuple(values["tau"]),
            cutoff_a=values.get("cutoff_a", cutoff),
            cutoff_b=values.get("cutoff_b", cutoff),
            dt_fast=values.get("dt_fast", DT_FAST),
            dt_slow=values.get("dt_slow", DT_SLOW),
            samples_per_ramp=values.get("samples_per_ramp", SAMPLES_PER_STROKE),
        )

    def timescales(self) -> TimescaleReport:
        return timescale_report(self.params.g, self.params.kappa, self.params.gamma, self.tau)


@dataclass(frozen=True, eq=False)
class NodeRecord:
    """State summary at a stroke boundary."""

    index: int
    time: float
    delta: float
    energy: float
    N_A: float
    N_B: float
    omega_B: float
    photon: NumberDistribution
    phonon: NumberDistribution
    pump_amplitude: Optional[float] = None

    @property
    def polariton_energy(self) -> float:
        """ω_B⟨N̂_B⟩, the B-branch node energy."""
        return self.omega_B * self.N_B


@dataclass(frozen=True, eq=False)
class StrokeRecord:
    index: int
    label: str
    t_start: float
    t_end: float
    delta_start: float
    delta_end: float
    ledger: StrokeLedger
    trajectory: Trajectory


@dataclass(eq=False)
class CycleRecord:
    config: CycleConfig
    timescales: TimescaleReport
    nodes: List[NodeRecord]
    strokes: List[StrokeRecord]
    final_state: DensityMatrix
    final_energy: float
    final_N_B: float
    thermal_N_B: float
    diagnostics: List[str] = field(default_factory=list)

    # ---- node ledger ⟨H₀⟩ ----

    @property
    def node_energies(self) -> Tuple[float, float, float, float]:
        return tuple(node.energy for node in self.nodes)

    @property
    def stroke_work(self) -> Tuple[float, float]:
        E1, E2, E3, E4 = self.node_energies
        return E2 - E1, E4 - E3

    @property
    def stroke_heat(self) -> Tuple[float, float]:
        E1, E2, E3, E4 = self.node_energies
        return E3 - E2, E1 - E4

    @property
    def total_work(self) -> float:
        return sum(self.stroke_work)

    @property
    def efficiency(self) -> float:
        return _efficiency(self.stroke_work, self.stroke_heat)

    # ---- B-branch polariton ledger ----

    @property
    def polariton_energies(self) -> Tuple[float, float, float, float]:
        return tuple(node.polariton_energy for node in self.nodes)

    @property
    def polariton_work(self) -> Tuple[float, float]:
        E1, E2, E3, E4 = self.polariton_energies
        return E2 - E1, E4 - E3

    @property
    def polariton_heat(self) -> Tuple[float, float]:
        E1, E2, E3, E4 = self.polariton_energies
        return E3 - E2, E1 - E4

    @property
    def polariton_efficiency(self) -> float:
        return _efficiency(self.polariton_work, self.polariton_heat)

    # ---- trajectory ledger ----

    @property
    def trajectories(self) -> List[Trajectory]:
        return [stroke.trajectory for stroke in self.strokes]

    @property
    def trajectory_work(self) -> float:
        return sum(stroke.ledger.W for stroke in self.strokes)

    @property
    def trajectory_heat(self) -> float:
        return sum(stroke.ledger.Q for stroke in self.strokes)

    @property
    def first_law_residual(self) -> float:
        """W₁ + W₃ + Q₂ + Q₄ integrated along the trajectory."""
        W1, _, W3, _ = (stroke.ledger.W for stroke in self.strokes)
        _, Q2, _, Q4 = (stroke.ledger.Q for stroke in self.strokes)
        return W1 + W3 + Q2 + Q4

    @property
    def ledger_closure(self) -> float:
        """Σ(Q+W) over strokes minus U_end − U_start."""
        return self.trajectory_heat + self.trajectory_work - (self.final_energy - self.nodes[0].energy)

    @property
    def stroke4_residual(self) -> float:
        """U at the end of the truncated stroke 4 minus E₁."""
        return self.final_energy - self.nodes[0].energy

    @property
    def population_gap(self) -> float:
        """⟨N̂_B⟩ after stroke 4 minus its thermal value at δ_i."""
        return self.final_N_B - self.thermal_N_B

    def nodes_frame(self) -> pd.DataFrame:
        return pd.DataFrame([
            {
                "node": node.index,
                "t": node.time,
                "delta": node.delta,
                "E": node.energy,
                "E_B": node.polariton_energy,
                "N_A": node.N_A,
                "N_B": node.N_B,
                "omega_B": node.omega_B,
                "alpha_in": node.pump_amplitude,
            }
            for node in self.nodes
        ])

    def strokes_frame(self) -> pd.DataFrame:
        return pd.DataFrame([
            {
                "stroke": stroke.index,
                "label": stroke.label,
                "t_start": stroke.t_start,
                "t_end": stroke.t_end,
                "Q": stroke.ledger.Q,
                "W": stroke.ledger.W,
                "delta_U": stroke.ledger.totals.delta_U,
                "Q_a": stroke.ledger.bare.Q_a,
                "Q_b": stroke.ledger.bare.Q_b,
                "W_a": stroke.ledger.bare.W_a,
                "corr": stroke.ledger.bare.corr,
            }
            for stroke in self.strokes
        ])

    def distributions_frame(self) -> pd.DataFrame:
        rows = []
        for node in self.nodes:
            for mode, dist in (("photon", node.photon), ("phonon", node.phonon)):
                for n, p in enumerate(dist.probs):
                    rows.append({"node": node.index, "mode": mode, "n": n, "P_n": p})
        return pd.DataFrame(rows)

    def trajectory_frame(self) -> pd.DataFrame:
        """Columns t, n_a, n_b, N_A, N_B, energy, purity, stroke."""
        frames = []
        for stroke in self.strokes:
            frame = stroke.trajectory.to_frame()
            frame["stroke"] = stroke.index
            frames.append(frame)
        return pd.concat(frames, ignore_index=True)[list(TRAJECTORY_COLUMNS)]


def _efficiency(work: Sequence[float], heat: Sequence[float]) -> float:
    absorbed = sum(value for value in heat if value > 0)
    if absorbed <= 0:
        return float("nan")
    return -sum(work) / absorbed


# =======================
# SERVICE
# =======================

class CycleService:
    """Evolves one configured cycle; holds the operator bundle and per-δ caches."""

    def __init__(self, cfg: CycleConfig, progress: Optional[ProgressReporter] = None):
        self.cfg = cfg
        self.progress = progress
        params = cfg.params
        self.ops = two_mode_operators(cfg.cutoff_a, cfg.cutoff_b)
        self.terms = hamiltonian_terms(params.g, cfg.cutoff_a, cfg.cutoff_b, ops=self.ops)
        self.dissipators = master_dissipators(params, self.ops)
        self.schedule = cycle_schedule(cfg.delta_i, cfg.delta_f, cfg.tau)
        self._hamiltonians: Dict[float, OperatorMatrix] = {}
        self._polaritons: Optional[Tuple[float, Dict[str, OperatorMatrix], BogoliubovMatrices]] = None
        self._last_bog: Optional[BogoliubovMatrices] = None

    def delta_at(self, t: float) -> float:
        return schedule_eval(self.schedule, t)

    def hamiltonian_at(self, t: float) -> OperatorMatrix:
        return self._hamiltonian_for(self.delta_at(t))

    def _hamiltonian_for(self, delta: float) -> OperatorMatrix:
        H = self._hamiltonians.get(delta)
        if H is None:
            H = self.terms.at(delta)
            if len(self._hamiltonians) >= HAMILTONIAN_CACHE_SIZE:
                self._hamiltonians.pop(next(iter(self._hamiltonians)))
            self._hamiltonians[delta] = H
        return H

    def polaritons_at(self, delta: float) -> Tuple[Dict[str, OperatorMatrix], BogoliubovMatrices]:
        """N̂_A, N̂_B at δ with labels carried from the previous evaluation."""
        if self._polaritons is not None and self._polaritons[0] == delta:
            return self._polaritons[1], self._polaritons[2]
        bog = bogoliubov_numeric(delta, self.cfg.params.g, reference=self._last_bog)
        numbers = {
            "N_A": polariton_number_operator(bog, self.ops, PolaritonBranch.A),
            "N_B": polariton_number_operator(bog, self.ops, PolaritonBranch.B),
        }
        self._last_bog = bog
        self._polaritons = (delta, numbers, bog)
        return numbers, bog

    def observables_at(self, t: float) -> Dict[str, OperatorMatrix]:
        delta = self.delta_at(t)
        numbers, _ = self.polaritons_at(delta)
        return {
            "n_a": self.ops.n_a,
            "n_b": self.ops.n_b,
            "energy": self._hamiltonian_for(delta),
            **numbers,
        }

    def frequency_scale(self, index: int) -> float:
        """Upper polariton frequency ω_A at the stroke's turning points."""
        segment = self.schedule.segments[index]
        return max(
            polariton_frequencies(delta, self.cfg.params.g).omega_A
            for delta in (segment.delta_start, segment.delta_end)
        )

    def _sample_stride(self, index: int) -> float:
        duration = self.cfg.tau[index]
        stride = duration / self.cfg.samples_per_ramp
        if index in (1, 3) and self.cfg.params.kappa > 0:
            stride = min(stride, HOLD_STRIDE_KAPPA / self.cfg.params.kappa)
        return stride

    def _node(self, index: int, time: float, rho: DensityMatrix, pump_state) -> NodeRecord:
        delta = self.delta_at(time)
        numbers, bog = self.polaritons_at(delta)
        dense = rho.toarray()
        pump_amplitude = None
        if pump_state is not None:
            pump_amplitude = pump_amplitude_for_detuning(delta, pump_state)
        return NodeRecord(
            index=index,
            time=time,
            delta=delta,
            energy=self._hamiltonian_for(delta).trace_with(dense).real,
            N_A=numbers["N_A"].trace_with(dense).real,
            N_B=numbers["N_B"].trace_with(dense).real,
            omega_B=bog.spectrum.omega_B,
            photon=number_distribution(partial_trace(rho, ModeId.OPTICAL)),
            phonon=number_distribution(partial_trace(rho, ModeId.MECHANICAL)),
            pump_amplitude=pump_amplitude,
        )

    def run_stroke(self, index: int, rho: DensityMatrix) -> StrokeRecord:
        cfg = self.cfg
        t_start = self.schedule.starts()[index]
        t_end = self.schedule.ends[index]
        dt = cfg.dt_slow if index == 3 else cfg.dt_fast
        accumulator = LedgerAccumulator(self.terms, self.schedule)

        trajectory = rk4_evolve(
            rho,
            self.hamiltonian_at,
            self.dissipators,
            t_start,
            t_end,
            dt,
            observables=self.observables_at,
            sample_every=self._sample_stride(index),
            on_step=accumulator.update,
            omega_max=self.frequency_scale(index),
        )
        segment = self.schedule.segments[index]
        return StrokeRecord(
            index=index + 1,
            label=STROKE_LABELS[index],
            t_start=t_start,
            t_end=t_end,
            delta_start=segment.delta_start,
            delta_end=segment.delta_end,
            ledger=accumulator.ledger(),
            trajectory=trajectory,
        )

    def run(self, check_timescales: bool = True) -> CycleRecord:
        cfg = self.cfg
        params = cfg.params
        diagnostics: List[str] = []
        if check_timescales:
            report = validate_timescales(cfg)
        else:
            report = cfg.timescales()
        diagnostics.extend(report.warnings)

        pump_state = None
        if params.pump is not None:
            pump_state = mean_field(params.pump.alpha_in, params)

        rho = product_state(thermal_state(params.nbar_a, cfg.cutoff_a), thermal_state(params.nbar_b, cfg.cutoff_b))
        if rho.tail_mass > TAIL_MASS_WARNING:
            diagnostics.append(f"Initial thermal state truncation loses mass {rho.tail_mass:.3e}")

        nodes = [self._node(1, 0.0, rho, pump_state)]
        strokes: List[StrokeRecord] = []
        for index in range(4):
            stroke = self.run_stroke(index, rho)
            rho = stroke.trajectory.final_state
            diagnostics.extend(stroke.trajectory.diagnostics)
            strokes.append(stroke)
            if index < 3:
                nodes.append(self._node(index + 2, stroke.t_end, rho, pump_state))
            if self.progress is not None:
                self.progress.info(
                    f"Stroke {index + 1} ({stroke.label}) done: Q={stroke.ledger.Q:.6g}, W={stroke.ledger.W:.6g}"
                )

        dense = rho.toarray()
        numbers, bog = self.polaritons_at(cfg.delta_i)
        _, thermal_N_B = thermal_polariton_populations(bog, params.nbar_a, params.nbar_b)
        return CycleRecord(
            config=cfg,
            timescales=report,
            nodes=nodes,
            strokes=strokes,
            final_state=rho,
            final_energy=self._hamiltonian_for(cfg.delta_i).trace_with(dense).real,
            final_N_B=numbers["N_B"].trace_with(dense).real,
            thermal_N_B=thermal_N_B,
            diagnostics=diagnostics,
        )


def run_cycle(
    cfg: CycleConfig,
    progress: Optional[ProgressReporter] = None,
    check_timescales: bool = True,
) -> CycleRecord:
    """
    Evolve the thermal product state through the four strokes.

    Raises:
        TimescaleError: If check_timescales and the hierarchy fails.
        IntegratorError: On trace drift or non-finite states.
    """
    return CycleService(cfg, progress).run(check_timescales=check_timescales)
