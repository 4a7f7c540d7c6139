"""
OPTOTTO CONFIGURATION & SETTINGS

Central location for all application constants:
- App metadata
- Numerical tolerances
- Integrator and mean-field defaults
- Normal-mode and timescale thresholds
- Otto cycle parameter sets
- Scenarios, output formats and exit codes
"""

# =======================
# APP METADATA
# =======================
APP_NAME = "OptOtto"
APP_TITLE = "OptOtto: Optomechanical Otto Engine Simulator"
APP_VERSION = "1.0.0"

# =======================
# NUMERICAL TOLERANCES
# =======================
# Sparse entries below this magnitude are never stored
DROP_TOLERANCE = 1e-14

HERMITIAN_TOLERANCE = 1e-10
TRACE_TOLERANCE = 1e-9
PSD_TOLERANCE = -1e-8
DISTRIBUTION_FLOOR = -1e-10
DISTRIBUTION_MASS_TOLERANCE = 1e-6
EXPECTATION_IMAG_TOLERANCE = 1e-8

# Thermal-state truncation diagnostics
TAIL_MASS_WARNING = 1e-2

# =======================
# INTEGRATOR
# =======================
DT_FAST = 1e-3
DT_SLOW = 1e-2
TRACE_DRIFT_TARGET = 1e-7
TRACE_DRIFT_LIMIT = 1e-6
STEP_WARNING_PRODUCT = 0.1
# Spectral step-size estimate diagonalizes H densely up to this dimension
SPECTRUM_DENSE_MAX_DIM = 1024
POPULATION_FLOOR = -1e-8
EXPM_DENSE_MAX_DIM = 64
EXPM_MAX_DIM = 200

# =======================
# MEAN FIELD
# =======================
MEAN_FIELD_RELAXATION = 0.5
MEAN_FIELD_TOLERANCE = 1e-12
MEAN_FIELD_MAX_ITERATIONS = 1000

# =======================
# NORMAL MODES
# =======================
CONSTRAINT_TOLERANCE = 1e-8
MIN_COUPLING_THROUGH_CROSSING = 1e-6
APPROX_VALIDITY_COUPLING = 0.2
RADICAND_TOLERANCE = 1e-12

# =======================
# SQUEEZED BATH
# =======================
UNCERTAINTY_TOLERANCE = 1e-10
# Single-mode cutoff n_max >= slope * N_B + offset
SINGLE_MODE_CUTOFF_SLOPE = 8
SINGLE_MODE_CUTOFF_OFFSET = 10

# =======================
# TIMESCALE HIERARCHY
# =======================
# "much less than" passes at this ratio, warns between the two
MUCH_LESS_RATIO = 5.0
MARGINAL_RATIO = 2.0

# =======================
# OTTO CYCLE
# =======================
# Full-scale cycle, units of omega_m
FULL_CYCLE_PARAMETERS = {
    "g": 0.2,
    "kappa": 0.03,
    "gamma": 1e-3,
    "nbar_a": 0.0,
    "nbar_b": 4.0,
    "delta_i": -3.0,
    "delta_f": -0.4,
    "tau": (25.0, 50.0, 25.0, 1e4),
    "cutoff": 30,
}

# Desk-scale run: nbar_b=2, cutoffs 12, tau_4 = 3/gamma
REDUCED_CYCLE_PARAMETERS = {
    "g": 0.2,
    "kappa": 0.03,
    "gamma": 1e-3,
    "nbar_a": 0.0,
    "nbar_b": 2.0,
    "delta_i": -3.0,
    "delta_f": -0.4,
    "tau": (25.0, 50.0, 25.0, 3e3),
    "cutoff": 12,
}

SAMPLES_PER_STROKE = 200
# Hold strokes sample at least this often, in units of 1/kappa
HOLD_STRIDE_KAPPA = 0.5
LEDGER_CLOSURE_TOLERANCE = 0.01

# =======================
# SCENARIOS & OUTPUT
# =======================
SCENARIO_SPECTRUM = "spectrum"
SCENARIO_CYCLE = "cycle"
SCENARIO_SWEEP = "sweep"
SCENARIO_BATH = "bath"
SCENARIO_VALIDATE = "validate"

VALID_SCENARIOS = [
    SCENARIO_SPECTRUM,
    SCENARIO_CYCLE,
    SCENARIO_SWEEP,
    SCENARIO_BATH,
    SCENARIO_VALIDATE,
]

FORMAT_CSV = "csv"
FORMAT_JSON = "json"
VALID_FORMATS = [FORMAT_CSV, FORMAT_JSON]

DEFAULT_OUTPUT_DIRECTORY = "results"
# 17 significant digits
CSV_FLOAT_FORMAT = "%.16e"
HEADER_PREFIX = "# "

# =======================
# EXIT CODES
# =======================
EXIT_OK = 0
EXIT_PARSE_ERROR = 2
EXIT_VALIDATION_ERROR = 3
EXIT_RUNTIME_ERROR = 4

# =======================
# LOGGING
# =======================
LOG_FORMAT = "%(levelname)s %(name)s: %(message)s"
PROGRESS_LOGGER = "optotto.progress"


def get_full_cycle_parameters() -> dict:
    """Get a copy of the full-scale cycle parameter set."""
    return dict(FULL_CYCLE_PARAMETERS)


def get_reduced_cycle_parameters() -> dict:
    """Get a copy of the reduced-scale parameter set."""
    return dict(REDUCED_CYCLE_PARAMETERS)


def is_scenario_valid(scenario: str) -> bool:
    """Check if a scenario name is valid."""
    return scenario in VALID_SCENARIOS


def is_format_valid(fmt: str) -> bool:
    """Check if an output format is valid."""
    return fmt in VALID_FORMATS
