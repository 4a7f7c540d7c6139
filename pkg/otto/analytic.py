"""
OPTOTTO ANALYTIC CYCLE FORMULAS

Responsibilities:
- Second-order node energies of the B-branch cycle
- Exact-population work and efficiency of both polariton cycles
- Small-coupling performance: efficiency, work, optimal coupling, bounds

Energies in units of hbar*omega_m.
"""

import logging
import math
from dataclasses import dataclass
from typing import List, Tuple

from config.settings import APPROX_VALIDITY_COUPLING
from normal_modes.bogoliubov import bogoliubov_numeric, thermal_polariton_populations

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class PolaritonCycleResult:
    W_tot_A: float
    W_tot_B: float
    eta_A: float
    eta_B: float


@dataclass(frozen=True)
class SecondOrderPerformance:
    eta: float
    W_tot: float
    g2_opt: float
    eta_P: float
    ca_bound: float


def _validity_notes(delta_i: float, delta_f: float, g: float) -> List[str]:
    notes = []
    if not delta_i < -1.0:
        notes.append(f"delta_i={delta_i} is not on the phonon-like side")
    if not -1.0 < delta_f < 0.0:
        notes.append(f"delta_f={delta_f} is not on the photon-like side")
    if g > APPROX_VALIDITY_COUPLING:
        notes.append(f"g={g} above the small-coupling range")
    return notes


def analytic_node_energies(
    delta_i: float, delta_f: float, g: float, nbar_b: float
) -> Tuple[float, float, float, float]:
    """
    E₁..E₄ of the B-branch cycle to second order in g, thermal photons at zero.

    Outside δ_i < −1 < δ_f < 0 or for large g the values are still returned,
    with a logged warning.
    """
    for note in _validity_notes(delta_i, delta_f, g):
        logger.warning("Node energies outside validity regime: %s", note)
    g2 = g * g
    omega_bi = 1.0 + 2.0 * delta_i * g2 / (delta_i ** 2 - 1.0)
    omega_bf = 2.0 * g2 / (delta_f ** 2 - 1.0) - delta_f
    population_i = (1.0 + 4.0 * delta_i * g2 / (delta_i ** 2 - 1.0) ** 2) * nbar_b
    population_f = 2.0 * (1.0 + delta_f ** 2) * g2 / (delta_f ** 2 - 1.0) ** 2 * nbar_b
    offset_i = g2 / (delta_i - 1.0) ** 2
    offset_f = g2 / (delta_f - 1.0) ** 2

    E1 = omega_bi * population_i
    E2 = omega_bf * (population_i + offset_i - offset_f)
    E3 = omega_bf * population_f
    E4 = omega_bi * (population_f + offset_f - offset_i)
    return E1, E2, E3, E4


def work_efficiency_analytic(
    delta_i: float, delta_f: float, g: float, nbar_a: float, nbar_b: float
) -> PolaritonCycleResult:
    """
    Total work (ω_αi − ω_αf)(⟨N̂_α⟩_f − ⟨N̂_α⟩_i) and efficiency 1 − ω_αf/ω_αi per branch.

    Populations are the exact thermal Bogoliubov values at each detuning.

    Raises:
        DomainError: If either detuning is unstable.
    """
    initial = bogoliubov_numeric(delta_i, g)
    final = bogoliubov_numeric(delta_f, g)
    N_Ai, N_Bi = thermal_polariton_populations(initial, nbar_a, nbar_b)
    N_Af, N_Bf = thermal_polariton_populations(final, nbar_a, nbar_b)
    spec_i, spec_f = initial.spectrum, final.spectrum
    return PolaritonCycleResult(
        W_tot_A=(spec_i.omega_A - spec_f.omega_A) * (N_Af - N_Ai),
        W_tot_B=(spec_i.omega_B - spec_f.omega_B) * (N_Bf - N_Bi),
        eta_A=1.0 - spec_f.omega_A / spec_i.omega_A,
        eta_B=1.0 - spec_f.omega_B / spec_i.omega_B,
    )


def second_order_performance(delta_f: float, g: float, nbar_b: float) -> SecondOrderPerformance:
    """
    Small-g, near-resonant performance with ω_Bi ≈ ω_m, ω_Bf ≈ −δ_f − 2g².

    The high-temperature relation k_B T_b/ħω_m ≈ n̄_b + ½ converts the
    temperature forms of g²_opt, η_P and the Curzon-Ahlborn-type bound.
    """
    if g > APPROX_VALIDITY_COUPLING:
        logger.warning("Second-order performance used at g=%.3g", g)
    g2 = g * g
    thermal_energy = nbar_b + 0.5
    omega_bf = -delta_f - 2.0 * g2
    return SecondOrderPerformance(
        eta=1.0 - omega_bf,
        W_tot=(omega_bf - 1.0) * ((1.0 - 2.0 * g2) * nbar_b - g2),
        g2_opt=-delta_f / 4.0 - 1.0 / (8.0 * thermal_energy),
        eta_P=1.0 - (-delta_f / 2.0 + 1.0 / (4.0 * thermal_energy)),
        ca_bound=1.0 - math.sqrt(-delta_f / (2.0 * thermal_energy)),
    )
