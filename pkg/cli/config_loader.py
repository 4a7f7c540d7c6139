"""
OPTOTTO RUN CONFIGURATION LOADER

Responsibilities:
- Read JSON run configurations
- Convert an optional SI block to internal units
- Validate every block, collecting all errors and warnings before reporting
- Produce the resolved parameter set written into result headers

Schema (all frequencies in units of omega_m unless an `si` block is given):
    scenario   spectrum | cycle | sweep | bath | validate
    params     {delta, g, kappa, gamma, nbar_a, nbar_b}
    si         {omega_m_hz, kappa_hz, gamma_hz, temperature_a_K, temperature_b_K, omega_c_hz}
    pump       {g0, alpha_in, omega_c, omega_p, mass}
    cycle      {delta_i, delta_f, tau[4], cutoff_a, cutoff_b, dt_fast, dt_slow, samples_per_ramp}
    spectrum   {delta_start, delta_stop, num, g}
    sweep      {delta_i, delta_f{start, stop, num}, g{start, stop, num}}
    bath       {delta, g, cutoff, t_final, dt, frame}
    output     {directory, format}
"""

import json
import logging
import math
import os
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, List, Optional, Tuple, Union

import numpy as np

from config.settings import (
    DEFAULT_OUTPUT_DIRECTORY,
    DT_FAST,
    DT_SLOW,
    FORMAT_CSV,
    SAMPLES_PER_STROKE,
    SCENARIO_BATH,
    SCENARIO_CYCLE,
    SCENARIO_SPECTRUM,
    SCENARIO_SWEEP,
    SCENARIO_VALIDATE,
    VALID_FORMATS,
    VALID_SCENARIOS,
    is_format_valid,
    is_scenario_valid,
)
from fock.thermal import thermal_occupation
from model.params import PumpBlock, SystemParams, validate_system_params
from normal_modes.spectrum import stability_check
from otto.cycle_service import CycleConfig
from otto.timescales import timescale_report
from squeezed_bath.evolution import VALID_FRAMES, ROTATING
from utils.errors import ConfigParseError, ConfigValidationError, OptomechError

logger = logging.getLogger(__name__)

Number = Union[int, float]


@dataclass(frozen=True)
class GridAxis:
    start: float
    stop: float
    num: int

    def values(self) -> np.ndarray:
        return np.linspace(self.start, self.stop, self.num)

    def to_dict(self) -> dict:
        return {"start": self.start, "stop": self.stop, "num": self.num}


@dataclass(frozen=True)
class SpectrumSpec:
    deltas: GridAxis
    g: float


@dataclass(frozen=True)
class SweepSpec:
    delta_i: float
    delta_f: GridAxis
    g: GridAxis


@dataclass(frozen=True)
class BathSpec:
    delta: float
    g: float
    cutoff: Optional[int]
    t_final: float
    dt: float
    frame: str = ROTATING


@dataclass
class RunConfig:
    """A validated run; `resolved` is the parameter set echoed into every output header."""

    scenario: str
    params: Optional[SystemParams] = None
    cycle: Optional[CycleConfig] = None
    spectrum: Optional[SpectrumSpec] = None
    sweep: Optional[SweepSpec] = None
    bath: Optional[BathSpec] = None
    output_directory: str = DEFAULT_OUTPUT_DIRECTORY
    output_format: str = FORMAT_CSV
    threads: Optional[int] = None
    strict: bool = False
    deterministic: bool = True
    warnings: List[str] = field(default_factory=list)
    resolved: Dict[str, Any] = field(default_factory=dict)


# =======================
# READING
# =======================

def read_config_file(path: Union[str, Path]) -> dict:
    """
    Load the raw JSON document.

    Raises:
        ConfigParseError: Missing file, malformed JSON, or a non-object document.
    """
    path = Path(path)
    if not path.is_file():
        raise ConfigParseError(f"Config file not found: {path}")
    try:
        with open(path, "r", encoding="utf-8") as handle:
            document = json.load(handle)
    except json.JSONDecodeError as exc:
        raise ConfigParseError(f"Malformed JSON in {path}: line {exc.lineno}, column {exc.colno}: {exc.msg}") from exc
    except OSError as exc:
        raise ConfigParseError(f"Cannot read {path}: {exc}") from exc
    if not isinstance(document, dict):
        raise ConfigParseError(f"Config root must be an object, got {type(document).__name__}")
    return document


# =======================
# FIELD HELPERS
# =======================

class _Collector:
    """Accumulates messages while the blocks are read."""

    def __init__(self):
        self.errors: List[str] = []
        self.warnings: List[str] = []

    def number(self, block: dict, key: str, where: str, default: Optional[Number] = None,
               required: bool = True) -> Optional[float]:
        if key not in block:
            if required and default is None:
                self.errors.append(f"{where}.{key} is required")
            return None if default is None else float(default)
        value = block[key]
        if isinstance(value, bool) or not isinstance(value, (int, float)) or not math.isfinite(value):
            self.errors.append(f"{where}.{key} must be a finite number (got {value!r})")
            return None
        return float(value)

    def integer(self, block: dict, key: str, where: str, default: Optional[int] = None) -> Optional[int]:
        if key not in block:
            if default is None:
                self.errors.append(f"{where}.{key} is required")
            return default
        value = block[key]
        if isinstance(value, bool) or not isinstance(value, int):
            self.errors.append(f"{where}.{key} must be an integer (got {value!r})")
            return None
        return value

    def block(self, document: dict, key: str, required: bool = False) -> dict:
        value = document.get(key)
        if value is None:
            if required:
                self.errors.append(f"'{key}' block is required for this scenario")
            return {}
        if not isinstance(value, dict):
            self.errors.append(f"'{key}' must be an object")
            return {}
        return value

    def axis(self, block: dict, key: str, where: str) -> Optional[GridAxis]:
        axis_block = block.get(key)
        if not isinstance(axis_block, dict):
            self.errors.append(f"{where}.{key} must be an object with start, stop, num")
            return None
        start = self.number(axis_block, "start", f"{where}.{key}")
        stop = self.number(axis_block, "stop", f"{where}.{key}")
        num = self.integer(axis_block, "num", f"{where}.{key}")
        if None in (start, stop, num):
            return None
        if num < 2:
            self.errors.append(f"{where}.{key}.num must be at least 2 (got {num})")
            return None
        if not start < stop:
            self.errors.append(f"{where}.{key} must be strictly increasing (start {start} >= stop {stop})")
            return None
        return GridAxis(start, stop, num)


def _stability_message(name: str, delta: float, g: float) -> str:
    return f"{name}={delta} violates the stability condition delta < -4 g^2 = {-4.0 * g * g:.6g}"


# =======================
# BLOCKS
# =======================

def _si_conversion(si: dict, collector: _Collector) -> Dict[str, float]:
    """Rates relative to omega_m and occupations from temperatures."""
    converted: Dict[str, float] = {}
    omega_m_hz = collector.number(si, "omega_m_hz", "si")
    if omega_m_hz is None:
        return converted
    if not omega_m_hz > 0:
        collector.errors.append(f"si.omega_m_hz must be positive (got {omega_m_hz})")
        return converted
    converted["omega_m"] = 2.0 * math.pi * omega_m_hz
    for key, target in (("kappa_hz", "kappa"), ("gamma_hz", "gamma")):
        value = collector.number(si, key, "si", required=False)
        if value is not None:
            converted[target] = value / omega_m_hz
    temperature_b = collector.number(si, "temperature_b_K", "si", required=False)
    if temperature_b is not None and temperature_b >= 0:
        converted["nbar_b"] = thermal_occupation(temperature_b, converted["omega_m"])
    temperature_a = collector.number(si, "temperature_a_K", "si", required=False)
    if temperature_a is not None:
        omega_c_hz = collector.number(si, "omega_c_hz", "si")
        if omega_c_hz is not None and omega_c_hz > 0 and temperature_a >= 0:
            converted["nbar_a"] = thermal_occupation(temperature_a, 2.0 * math.pi * omega_c_hz)
    return converted


def _pump_block(document: dict, collector: _Collector) -> Optional[PumpBlock]:
    pump = collector.block(document, "pump")
    if not pump:
        return None
    values = [collector.number(pump, key, "pump") for key in ("g0", "alpha_in", "omega_c", "omega_p")]
    mass = collector.number(pump, "mass", "pump", default=1e-15)
    if None in values or mass is None:
        return None
    return PumpBlock(*values, mass=mass)


def _params(document: dict, collector: _Collector, delta_default: Optional[float],
            g_default: Optional[float]) -> Optional[SystemParams]:
    block = collector.block(document, "params")
    si = _si_conversion(collector.block(document, "si"), collector) if "si" in document else {}
    delta = collector.number(block, "delta", "params", default=delta_default)
    g = collector.number(block, "g", "params", default=g_default)
    values = {
        "kappa": collector.number(block, "kappa", "params", default=si.get("kappa", 0.0)),
        "gamma": collector.number(block, "gamma", "params", default=si.get("gamma", 0.0)),
        "nbar_a": collector.number(block, "nbar_a", "params", default=si.get("nbar_a", 0.0)),
        "nbar_b": collector.number(block, "nbar_b", "params", default=si.get("nbar_b", 0.0)),
    }
    for key in ("kappa", "gamma", "nbar_a", "nbar_b"):
        if key in block and key in si:
            collector.warnings.append(f"params.{key} overrides the value derived from the si block")
    omega_m = si.get("omega_m", 1.0)
    pump = _pump_block(document, collector)
    if delta is None or g is None or None in values.values():
        return None
    errors = validate_system_params(omega_m, delta, g, pump=pump, **values)
    if errors:
        collector.errors.extend(f"params: {message}" for message in errors)
        return None
    return SystemParams(delta=delta, g=g, omega_m=omega_m, pump=pump, **values)


def _cycle(document: dict, collector: _Collector) -> Tuple[Optional[CycleConfig], Optional[SystemParams]]:
    block = collector.block(document, "cycle", required=True)
    delta_i = collector.number(block, "delta_i", "cycle")
    delta_f = collector.number(block, "delta_f", "cycle")
    params = _params(document, collector, delta_i, None)
    tau = block.get("tau")
    if not (isinstance(tau, list) and len(tau) == 4 and all(
            isinstance(value, (int, float)) and not isinstance(value, bool) for value in tau)):
        collector.errors.append(f"cycle.tau must be a list of four durations (got {tau!r})")
        tau = None
    elif any(not value > 0 for value in tau):
        collector.errors.append(f"cycle.tau entries must be positive (got {tau})")
        tau = None
    cutoff = collector.integer(block, "cutoff", "cycle", default=12)
    cutoff_a = collector.integer(block, "cutoff_a", "cycle", default=cutoff)
    cutoff_b = collector.integer(block, "cutoff_b", "cycle", default=cutoff)
    dt_fast = collector.number(block, "dt_fast", "cycle", default=DT_FAST)
    dt_slow = collector.number(block, "dt_slow", "cycle", default=DT_SLOW)
    samples = collector.integer(block, "samples_per_ramp", "cycle", default=SAMPLES_PER_STROKE)

    if params is None or None in (delta_i, delta_f, tau, cutoff_a, cutoff_b, dt_fast, dt_slow, samples):
        return None, params
    if not delta_i < delta_f < 0:
        collector.errors.append(f"cycle needs delta_i < delta_f < 0 (got {delta_i}, {delta_f})")
    for name, value in (("cycle.delta_i", delta_i), ("cycle.delta_f", delta_f)):
        if value < 0 and not stability_check(value, params.g):
            collector.errors.append(_stability_message(name, value, params.g))
    for name, value in (("cycle.cutoff_a", cutoff_a), ("cycle.cutoff_b", cutoff_b), ("cycle.samples_per_ramp", samples)):
        if value < 1:
            collector.errors.append(f"{name} must be >= 1 (got {value})")
    for name, value in (("cycle.dt_fast", dt_fast), ("cycle.dt_slow", dt_slow)):
        if not value > 0:
            collector.errors.append(f"{name} must be positive (got {value})")

    report = timescale_report(params.g, params.kappa, params.gamma, tau)
    collector.errors.extend(f"timescales: {message}" for message in report.errors)
    collector.warnings.extend(f"timescales: {message}" for message in report.warnings)
    if collector.errors:
        return None, params
    try:
        cycle = CycleConfig(
            params=params,
            delta_i=delta_i,
            delta_f=delta_f,
            tau=tuple(tau),
            cutoff_a=cutoff_a,
            cutoff_b=cutoff_b,
            dt_fast=dt_fast,
            dt_slow=dt_slow,
            samples_per_ramp=samples,
        )
    except OptomechError as exc:
        collector.errors.append(f"cycle: {exc}")
        return None, params
    return cycle, cycle.params


def _spectrum(document: dict, collector: _Collector) -> Optional[SpectrumSpec]:
    block = collector.block(document, "spectrum", required=True)
    g = collector.number(block, "g", "spectrum")
    start = collector.number(block, "delta_start", "spectrum")
    stop = collector.number(block, "delta_stop", "spectrum")
    num = collector.integer(block, "num", "spectrum", default=200)
    if g is not None and not g >= 0:
        collector.errors.append(f"spectrum.g must be non-negative (got {g})")
    if None in (g, start, stop, num):
        return None
    if num < 2:
        collector.errors.append(f"spectrum.num must be at least 2 (got {num})")
    if not start < stop:
        collector.errors.append(f"spectrum detunings must be strictly increasing (start {start} >= stop {stop})")
    if not stop < 0:
        collector.errors.append(f"spectrum.delta_stop must be negative, red-detuned regime (got {stop})")
    return SpectrumSpec(GridAxis(start, stop, num), g)


def _sweep(document: dict, collector: _Collector) -> Optional[SweepSpec]:
    block = collector.block(document, "sweep", required=True)
    delta_i = collector.number(block, "delta_i", "sweep")
    delta_f = collector.axis(block, "delta_f", "sweep")
    g = collector.axis(block, "g", "sweep")
    if g is not None and g.start < 0:
        collector.errors.append(f"sweep.g must be non-negative (got start {g.start})")
    if delta_f is not None and not delta_f.stop < 0:
        collector.errors.append(f"sweep.delta_f must stay red-detuned (got stop {delta_f.stop})")
    if delta_i is not None and not delta_i < 0:
        collector.errors.append(f"sweep.delta_i must be negative (got {delta_i})")
    elif delta_i is not None and g is not None and not stability_check(delta_i, g.stop):
        collector.warnings.append(
            f"sweep.delta_i={delta_i} is unstable for the largest g={g.stop}; those rows are masked"
        )
    if None in (delta_i, delta_f, g):
        return None
    return SweepSpec(delta_i, delta_f, g)


def _bath(document: dict, collector: _Collector) -> Optional[BathSpec]:
    block = collector.block(document, "bath", required=True)
    delta = collector.number(block, "delta", "bath")
    g = collector.number(block, "g", "bath")
    t_final = collector.number(block, "t_final", "bath")
    dt = collector.number(block, "dt", "bath", default=DT_SLOW)
    cutoff = collector.integer(block, "cutoff", "bath") if "cutoff" in block else None
    frame = block.get("frame", ROTATING)
    if frame not in VALID_FRAMES:
        collector.errors.append(f"bath.frame must be one of {list(VALID_FRAMES)} (got {frame!r})")
    if None in (delta, g, t_final, dt):
        return None
    if not delta < 0:
        collector.errors.append(f"bath.delta must be negative, red-detuned regime (got {delta})")
    elif not stability_check(delta, g):
        collector.errors.append(_stability_message("bath.delta", delta, g))
    if not t_final > 0:
        collector.errors.append(f"bath.t_final must be positive (got {t_final})")
    if not dt > 0:
        collector.errors.append(f"bath.dt must be positive (got {dt})")
    if cutoff is not None and cutoff < 1:
        collector.errors.append(f"bath.cutoff must be >= 1 (got {cutoff})")
    return BathSpec(delta, g, cutoff, t_final, dt, frame)


def _check_output_directory(directory: str, collector: _Collector):
    path = Path(directory).resolve()
    probe = path
    while not probe.exists():
        if probe.parent == probe:
            break
        probe = probe.parent
    if probe.exists() and (not probe.is_dir() or not os.access(probe, os.W_OK)):
        collector.errors.append(f"output directory {directory} is not writable")


# =======================
# ENTRY POINT
# =======================

def parse_config(
    path: Union[str, Path],
    output_directory: Optional[str] = None,
    output_format: Optional[str] = None,
    threads: Optional[int] = None,
    strict: bool = False,
) -> RunConfig:
    """
    Read and validate a run configuration.

    Command-line values, when given, override the `output` block.

    Raises:
        ConfigParseError: The file cannot be read as a JSON object.
        ConfigValidationError: One or more checks failed; every message is
            carried, and under `strict` warnings count as errors.
    """
    document = read_config_file(path)
    collector = _Collector()

    scenario = document.get("scenario")
    if not isinstance(scenario, str) or not is_scenario_valid(scenario):
        collector.errors.append(f"scenario must be one of {VALID_SCENARIOS} (got {scenario!r})")
        raise ConfigValidationError(collector.errors, collector.warnings)

    output = collector.block(document, "output")
    directory = output_directory or output.get("directory", DEFAULT_OUTPUT_DIRECTORY)
    fmt = output_format or output.get("format", FORMAT_CSV)
    if not is_format_valid(fmt):
        collector.errors.append(f"output format must be one of {VALID_FORMATS} (got {fmt!r})")
    _check_output_directory(directory, collector)
    if threads is not None and threads < 1:
        collector.errors.append(f"--threads must be >= 1 (got {threads})")

    config = RunConfig(scenario=scenario, output_directory=directory, output_format=fmt,
                       threads=threads, strict=strict)
    resolved: Dict[str, Any] = {"scenario": scenario}

    if scenario == SCENARIO_CYCLE:
        config.cycle, config.params = _cycle(document, collector)
        if config.cycle is not None:
            resolved["cycle"] = {
                "delta_i": config.cycle.delta_i,
                "delta_f": config.cycle.delta_f,
                "tau": list(config.cycle.tau),
                "cutoff_a": config.cycle.cutoff_a,
                "cutoff_b": config.cycle.cutoff_b,
                "dt_fast": config.cycle.dt_fast,
                "dt_slow": config.cycle.dt_slow,
                "samples_per_ramp": config.cycle.samples_per_ramp,
            }
    elif scenario == SCENARIO_SPECTRUM:
        config.spectrum = _spectrum(document, collector)
        if config.spectrum is not None:
            resolved["spectrum"] = {**config.spectrum.deltas.to_dict(), "g": config.spectrum.g}
    elif scenario == SCENARIO_SWEEP:
        config.sweep = _sweep(document, collector)
        if config.sweep is not None:
            config.params = _params(document, collector, config.sweep.delta_i, 0.0)
            resolved["sweep"] = {
                "delta_i": config.sweep.delta_i,
                "delta_f": config.sweep.delta_f.to_dict(),
                "g": config.sweep.g.to_dict(),
            }
    elif scenario == SCENARIO_BATH:
        config.bath = _bath(document, collector)
        if config.bath is not None:
            config.params = _params(document, collector, config.bath.delta, config.bath.g)
            if config.params is not None and config.params.kappa == 0 and config.params.gamma == 0:
                collector.errors.append("bath scenario needs kappa or gamma positive")
            resolved["bath"] = {
                "delta": config.bath.delta,
                "g": config.bath.g,
                "cutoff": config.bath.cutoff,
                "t_final": config.bath.t_final,
                "dt": config.bath.dt,
                "frame": config.bath.frame,
            }
    elif scenario == SCENARIO_VALIDATE:
        pass

    if config.params is not None:
        resolved["params"] = config.params.to_dict()
    resolved["output"] = {"directory": directory, "format": fmt}

    if strict and collector.warnings:
        collector.errors.extend(f"(strict) {message}" for message in collector.warnings)
    if collector.errors:
        raise ConfigValidationError(collector.errors, collector.warnings)

    for message in collector.warnings:
        logger.warning("Config: %s", message)
    config.warnings = collector.warnings
    config.resolved = resolved
    return config
