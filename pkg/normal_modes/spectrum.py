"""
OPTOTTO POLARITON SPECTRUM

Responsibilities:
- Closed-form normal-mode frequencies of H₀
- Red-detuned stability criterion δ < −4g²
- Avoided-crossing gap at δ = −1

Frequencies are in units of omega_m. B is always the lower branch.
"""

import math
from dataclasses import dataclass

from config.settings import RADICAND_TOLERANCE
from utils.errors import DomainError


@dataclass(frozen=True)
class PolaritonSpectrum:
    omega_A: float
    omega_B: float

    @property
    def splitting(self) -> float:
        return self.omega_A - self.omega_B


def _require_red_detuned(delta: float):
    if not delta < 0:
        raise DomainError(f"Only the red-detuned regime is supported (delta={delta})")


def stability_check(delta: float, g: float) -> bool:
    """True iff the linearized system is stable, δ < −4g²."""
    _require_red_detuned(delta)
    return delta < -4.0 * g * g


def polariton_frequencies(delta: float, g: float) -> PolaritonSpectrum:
    """
    ω_A, ω_B of H₀ = −δ n̂_a + n̂_b + g(â+â†)(b̂+b̂†).

    ω_A² = (δ²+1+√((δ²−1)²−16g²δ))/2 and ω_B² = δ(δ+4g²)/ω_A², the product
    form of the lower root. At the stability boundary ω_B = 0.

    Raises:
        DomainError: If δ ≥ 0 or the parameters are unstable.
    """
    _require_red_detuned(delta)
    if g < 0:
        raise DomainError(f"Coupling must be non-negative (g={g})")
    inner = math.sqrt((delta * delta - 1.0) ** 2 - 16.0 * g * g * delta)
    omega_a_sq = 0.5 * (delta * delta + 1.0 + inner)
    omega_b_sq = delta * (delta + 4.0 * g * g) / omega_a_sq
    if omega_b_sq < -RADICAND_TOLERANCE:
        raise DomainError(f"Unstable parameters: delta={delta} >= -4g^2={-4.0 * g * g}")
    return PolaritonSpectrum(math.sqrt(omega_a_sq), math.sqrt(max(omega_b_sq, 0.0)))


def avoided_crossing_gap(g: float) -> float:
    """ω_A − ω_B at δ = −1, √(1+2g) − √(1−2g)."""
    if g < 0:
        raise DomainError(f"Coupling must be non-negative (g={g})")
    if g >= 0.5:
        raise DomainError(f"No real lower branch at the crossing for g={g} >= 1/2")
    return math.sqrt(1.0 + 2.0 * g) - math.sqrt(1.0 - 2.0 * g)
