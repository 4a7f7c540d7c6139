"""
OPTOTTO SCENARIO MANAGER

Coordinates configuration loading, scenario execution, result writing and
the printed summary, and maps failures to process exit codes:

    0 ok, 2 parse error, 3 validation error, 4 runtime/integrator error
"""

import logging
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np
import pandas as pd

from cli.config_loader import RunConfig, parse_config
from cli.validation_checks import run_checks
from config.settings import (
    EXIT_OK,
    EXIT_PARSE_ERROR,
    EXIT_RUNTIME_ERROR,
    EXIT_VALIDATION_ERROR,
    SCENARIO_BATH,
    SCENARIO_CYCLE,
    SCENARIO_SPECTRUM,
    SCENARIO_SWEEP,
    SCENARIO_VALIDATE,
)
from fock.states import number_distribution, thermal_state
from normal_modes.bogoliubov import bogoliubov_numeric
from normal_modes.spectrum import polariton_frequencies, stability_check
from otto.analytic import work_efficiency_analytic
from otto.cycle_service import run_cycle
from otto.sweep import sweep_map
from reports.results_writer import ResultsWriter
from reports.summary_formatter import SummaryFormatter
from squeezed_bath.effective import effective_bath_exact, squeezing_decomposition, steady_variances
from squeezed_bath.evolution import evolve_effective_B, required_cutoff, thermal_deviation_chi2
from utils.errors import (
    ConfigParseError,
    ConfigValidationError,
    DomainError,
    OptomechError,
    ScheduleDomainError,
    TimescaleError,
)
from utils.progress import ProgressReporter

logger = logging.getLogger(__name__)

Section = Tuple[str, List[Tuple[str, object]]]


class ScenarioFailure(Exception):
    """A scenario ran but its outcome maps to a non-zero exit code."""

    def __init__(self, message: str, exit_code: int):
        super().__init__(message)
        self.exit_code = exit_code


class ScenarioManager:
    """Runs one validated configuration and writes its results."""

    def __init__(self, config: RunConfig, progress: Optional[ProgressReporter] = None, echo=print):
        self.config = config
        self.progress = progress or ProgressReporter()
        self.echo = echo
        self.writer = ResultsWriter(config.output_directory, config.output_format, config.resolved)
        self.formatter = SummaryFormatter()
        self.diagnostics: List[str] = list(config.warnings)
        self._handlers: Dict[str, Callable[[], List[Section]]] = {
            SCENARIO_SPECTRUM: self._run_spectrum,
            SCENARIO_CYCLE: self._run_cycle,
            SCENARIO_SWEEP: self._run_sweep,
            SCENARIO_BATH: self._run_bath,
            SCENARIO_VALIDATE: self._run_validate,
        }

    def run(self) -> int:
        """Execute the scenario, print the summary and return the exit code."""
        sections = self._handlers[self.config.scenario]()
        self.echo(self.formatter.format_summary(
            self.config.scenario,
            sections,
            diagnostics=self.diagnostics,
            files=[str(path) for path in self.writer.written],
        ))
        if self.config.strict and self.diagnostics:
            raise ScenarioFailure(
                f"{len(self.diagnostics)} warning(s) promoted to errors by --strict", EXIT_VALIDATION_ERROR
            )
        return EXIT_OK

    # =======================
    # SCENARIOS
    # =======================

    def _run_spectrum(self) -> List[Section]:
        request = self.config.spectrum
        rows = []
        for delta in request.deltas.values():
            delta = float(delta)
            stable = stability_check(delta, request.g)
            if stable:
                spectrum = polariton_frequencies(delta, request.g)
                rows.append((delta, spectrum.omega_A, spectrum.omega_B, True))
            else:
                rows.append((delta, np.nan, np.nan, False))
        frame = pd.DataFrame(rows, columns=["delta", "omega_A", "omega_B", "stable"])
        self.writer.write_table("spectrum", frame)
        stable_count = int(frame["stable"].sum())
        return [("Spectrum", [
            ("g", request.g),
            ("points", len(frame)),
            ("stable points", stable_count),
            ("min splitting", float((frame["omega_A"] - frame["omega_B"]).min()) if stable_count else "n/a"),
        ])]

    def _run_cycle(self) -> List[Section]:
        cfg = self.config.cycle
        self.progress.info(
            f"Cycle delta {cfg.delta_i} -> {cfg.delta_f}, cutoffs ({cfg.cutoff_a}, {cfg.cutoff_b})"
        )
        record = run_cycle(cfg, self.progress)
        self.diagnostics.extend(message for message in record.diagnostics if message not in self.diagnostics)
        self.writer.write_table("trajectory", record.trajectory_frame())
        self.writer.write_table("nodes", record.nodes_frame())
        self.writer.write_table("strokes", record.strokes_frame())
        self.writer.write_table("distributions", record.distributions_frame())

        analytic = work_efficiency_analytic(
            cfg.delta_i, cfg.delta_f, cfg.params.g, cfg.params.nbar_a, cfg.params.nbar_b
        )
        max_drift = max(trajectory.max_trace_drift for trajectory in record.trajectories)
        W1, W3 = record.stroke_work
        Q2, Q4 = record.stroke_heat
        return [
            ("Node ledger <H0>", [
                ("W1", W1), ("Q2", Q2), ("W3", W3), ("Q4", Q4),
                ("W_tot", record.total_work),
                ("efficiency", record.efficiency),
            ]),
            ("Polariton B ledger", [
                ("W_tot,B", sum(record.polariton_work)),
                ("efficiency B", record.polariton_efficiency),
                ("analytic efficiency B", analytic.eta_B),
            ]),
            ("Trajectory ledger", [
                ("sum Q", record.trajectory_heat),
                ("sum W", record.trajectory_work),
                ("W1+W3+Q2+Q4", record.first_law_residual),
                ("closure residual", record.ledger_closure),
                ("stroke-4 residual", record.stroke4_residual),
                ("N_B gap to thermal", record.population_gap),
                ("max trace drift", max_drift),
            ]),
        ]

    def _run_sweep(self) -> List[Section]:
        request = self.config.sweep
        params = self.config.params
        result = sweep_map(
            request.delta_i,
            request.delta_f.values(),
            request.g.values(),
            params.nbar_a,
            params.nbar_b,
            threads=self.config.threads,
            progress=self.progress,
        )
        self.writer.write_table("sweep", result.to_frame())
        self.writer.write_matrix("sweep_efficiency", result.efficiency, "g", result.g, "delta_f", result.delta_f)
        self.writer.write_matrix("sweep_abs_work", result.abs_work, "g", result.g, "delta_f", result.delta_f)
        self.writer.write_matrix(
            "sweep_stability_mask", result.stability_mask, "g", result.g, "delta_f", result.delta_f
        )
        rows = [("grid", f"{result.shape[0]} x {result.shape[1]}"), ("stable cells", int(result.stability_mask.sum()))]
        if result.stability_mask.any():
            row, column = result.argmax_abs_work()
            rows.extend([
                ("max |W_B|", float(result.abs_work[row, column])),
                ("at g", float(result.g[row])),
                ("at delta_f", float(result.delta_f[column])),
            ])
        return [("Sweep", rows)]

    def _run_bath(self) -> List[Section]:
        request = self.config.bath
        params = self.config.params
        bog = bogoliubov_numeric(request.delta, request.g)
        bath = effective_bath_exact(bog, params.kappa, params.gamma, params.nbar_a, params.nbar_b)
        variances = steady_variances(bath)
        decomposition = squeezing_decomposition(bath)
        cutoff = request.cutoff if request.cutoff is not None else required_cutoff(bath)
        trajectory = evolve_effective_B(
            bath,
            bog.spectrum.omega_B,
            thermal_state(0.0, cutoff),
            request.t_final,
            request.dt,
            frame=request.frame,
            sample_every=request.t_final / 200.0,
        )
        self.diagnostics.extend(trajectory.diagnostics)
        chi2 = thermal_deviation_chi2(number_distribution(trajectory.final_state), bath.Nbar_B)

        self.writer.write_table("bath_trajectory", trajectory.to_frame())
        self.writer.write_document("bath", {
            **bath.to_dict(),
            "omega_B": bog.spectrum.omega_B,
            "var_X": variances.var_X,
            "var_Y": variances.var_Y,
            "N_th": decomposition.N_th,
            "r": decomposition.r,
            "chi2_final": chi2,
        })
        final_N_B = trajectory.series("N_B")[-1]
        return [("Effective bath", [
            ("Gamma_B", bath.Gamma_B),
            ("N_B", bath.Nbar_B),
            ("M_B", float(np.real(bath.Mbar_B))),
            ("var_X steady", variances.var_X),
            ("var_Y steady", variances.var_Y),
            ("N_th", decomposition.N_th),
            ("r", decomposition.r),
            ("final <N_B>", float(final_N_B)),
            ("chi2 vs thermal", chi2),
            ("max trace drift", trajectory.max_trace_drift),
        ])]

    def _run_validate(self) -> List[Section]:
        results = run_checks()
        self.echo(self.formatter.format_checks(results))
        self.writer.write_table("validation", pd.DataFrame(results, columns=["check", "passed", "detail"]))
        failed = [name for name, passed, _ in results if not passed]
        if failed:
            raise ScenarioFailure(f"Validation failed: {', '.join(failed)}", EXIT_VALIDATION_ERROR)
        return [("Validation", [("checks passed", f"{len(results)}/{len(results)}")])]


# =======================
# ENTRY POINT
# =======================

def _report(lines: Sequence[str], echo):
    for line in lines:
        echo(line)


def execute(
    config_path: str,
    output_directory: Optional[str] = None,
    output_format: Optional[str] = None,
    threads: Optional[int] = None,
    strict: bool = False,
    progress: Optional[ProgressReporter] = None,
    echo=print,
) -> int:
    """Parse, run and map every failure to its exit code."""
    try:
        config = parse_config(config_path, output_directory, output_format, threads, strict)
    except ConfigParseError as exc:
        echo(f"Config parse error: {exc}")
        return EXIT_PARSE_ERROR
    except ConfigValidationError as exc:
        _report([f"Config validation error: {message}" for message in exc.errors], echo)
        return EXIT_VALIDATION_ERROR

    try:
        return ScenarioManager(config, progress, echo).run()
    except ScenarioFailure as exc:
        echo(str(exc))
        return exc.exit_code
    except (DomainError, ScheduleDomainError, TimescaleError) as exc:
        echo(f"Validation error: {exc}")
        return EXIT_VALIDATION_ERROR
    except OptomechError as exc:
        echo(f"Runtime error: {exc}")
        return EXIT_RUNTIME_ERROR
