"""
OPTOTTO EFFECTIVE POLARITON BATH

Responsibilities:
- Effective decay rate and squeezed-bath moments (N̄_B, M̄_B) of polariton B
- Steady-state quadrature variances
- Squeezed-thermal decomposition (N_th, r) and its forward map

M̄_B is rotated to be real and non-positive by a phase change of B̂; the
angle is kept on the bath so the lab-frame coefficient can be restored.
"""

import logging
import math
from dataclasses import dataclass
from typing import Tuple

import numpy as np

from config.settings import CONSTRAINT_TOLERANCE, UNCERTAINTY_TOLERANCE
from normal_modes.bogoliubov import BogoliubovMatrices, PolaritonBranch
from utils.errors import ConstraintError, DomainError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class EffectiveBath:
    """
    Squeezed reservoir seen by polariton B.

    Attributes:
        Gamma_B: Effective decay rate.
        Nbar_B: Steady population ⟨B̂†B̂⟩.
        Mbar_B: Squeezing moment; real and ≤ 0 when built by effective_bath_exact.
        phase: Angle θ of the rotation B̂ → B̂e^{iθ} applied to reach that gauge.
    """

    Gamma_B: float
    Nbar_B: float
    Mbar_B: complex
    phase: float = 0.0

    def __post_init__(self):
        if self.Nbar_B < 0:
            raise DomainError(f"Bath population must be non-negative, got {self.Nbar_B}")

    @property
    def squeezing_margin(self) -> float:
        """N̄(N̄+1) − |M̄|²; non-negative for a physical bath."""
        return self.Nbar_B * (self.Nbar_B + 1.0) - abs(self.Mbar_B) ** 2

    def to_dict(self) -> dict:
        return {
            "Gamma_B": self.Gamma_B,
            "Nbar_B": self.Nbar_B,
            "Mbar_B_real": float(np.real(self.Mbar_B)),
            "Mbar_B_imag": float(np.imag(self.Mbar_B)),
            "phase": self.phase,
        }


@dataclass(frozen=True)
class QuadratureStats:
    var_X: float
    var_Y: float

    @property
    def product(self) -> float:
        return self.var_X * self.var_Y

    @property
    def population(self) -> float:
        """(⟨X̂²⟩ + ⟨Ŷ²⟩ − 1)/2."""
        return 0.5 * (self.var_X + self.var_Y - 1.0)


@dataclass(frozen=True)
class SqueezingDecomposition:
    N_th: float
    r: float


def _rotate_real_nonpositive(moment: complex) -> Tuple[float, float]:
    """(−|M|, θ) with M e^{−2iθ} = −|M|."""
    magnitude = abs(moment)
    if magnitude == 0.0:
        return 0.0, 0.0
    theta = 0.5 * (np.angle(moment) - math.pi)
    return -magnitude, float(theta)


def effective_bath_exact(
    bog: BogoliubovMatrices, kappa: float, gamma: float, nbar_a: float, nbar_b: float
) -> EffectiveBath:
    """
    Γ_B, N̄_B and M̄_B from the B column of the Bogoliubov matrices.

    Γ_B = κ(|U₁₂|²−|V₁₂|²) + γ(|U₂₂|²−|V₂₂|²) is also the denominator of the
    two moment ratios.

    Raises:
        DomainError: If Γ_B is not positive.
        ConstraintError: If the resulting moments violate |M̄|² ≤ N̄(N̄+1).
    """
    column = PolaritonBranch.B.column
    u_photon, u_phonon = bog.U[0, column], bog.U[1, column]
    v_photon, v_phonon = bog.V[0, column], bog.V[1, column]

    gamma_b = float(
        kappa * (abs(u_photon) ** 2 - abs(v_photon) ** 2)
        + gamma * (abs(u_phonon) ** 2 - abs(v_phonon) ** 2)
    )
    if not gamma_b > 0:
        raise DomainError(
            f"Effective decay rate {gamma_b:.3e} is not positive at delta={bog.delta}, g={bog.g}"
        )

    population = (
        kappa * ((nbar_a + 1.0) * abs(v_photon) ** 2 + nbar_a * abs(u_photon) ** 2)
        + gamma * ((nbar_b + 1.0) * abs(v_phonon) ** 2 + nbar_b * abs(u_phonon) ** 2)
    ) / gamma_b
    moment = (
        kappa * (2.0 * nbar_a + 1.0) * v_photon * u_photon
        + gamma * (2.0 * nbar_b + 1.0) * v_phonon * u_phonon
    ) / gamma_b

    mbar, theta = _rotate_real_nonpositive(complex(moment))
    bath = EffectiveBath(gamma_b, float(population), mbar, theta)
    if bath.squeezing_margin < -UNCERTAINTY_TOLERANCE * max(1.0, population ** 2):
        raise ConstraintError(
            f"Bath moments violate |M|^2 <= N(N+1) by {-bath.squeezing_margin:.3e}"
        )
    logger.debug(
        "Effective bath at delta=%.4g: Gamma_B=%.6g, N_B=%.6g, M_B=%.6g",
        bog.delta, gamma_b, population, mbar,
    )
    return bath


def _real_moment(bath: EffectiveBath) -> float:
    moment = complex(bath.Mbar_B)
    if abs(moment.imag) > CONSTRAINT_TOLERANCE * max(1.0, abs(moment)):
        raise DomainError(f"Squeezing moment {moment} is not real; rotate its phase first")
    return moment.real


def steady_variances(bath: EffectiveBath) -> QuadratureStats:
    """⟨X̂²⟩_s = N̄ − M̄ + ½ and ⟨Ŷ²⟩_s = N̄ + M̄ + ½ for a real M̄."""
    moment = _real_moment(bath)
    return QuadratureStats(bath.Nbar_B - moment + 0.5, bath.Nbar_B + moment + 0.5)


def squeezed_thermal_moments(N_th: float, r: float) -> Tuple[float, float]:
    """(N̄, M̄) of a squeezed thermal state with thermal population N_th and squeezing r."""
    if N_th < 0:
        raise DomainError(f"Thermal population must be non-negative, got {N_th}")
    width = 2.0 * N_th + 1.0
    return N_th + width * math.sinh(r) ** 2, -math.cosh(r) * math.sinh(r) * width


def squeezing_decomposition(bath: EffectiveBath) -> SqueezingDecomposition:
    """
    Invert the squeezed-thermal map for (N_th, r).

    Uses 2N_th+1 = √((2N̄+1)² − 4|M̄|²) and tanh 2r = 2|M̄|/(2N̄+1); r carries
    the sign of −M̄ so a real positive M̄ gives r < 0.

    Raises:
        DomainError: If |M̄|² exceeds N̄(N̄+1) beyond rounding.
    """
    N = bath.Nbar_B
    moment = _real_moment(bath)
    if bath.squeezing_margin < -UNCERTAINTY_TOLERANCE * max(1.0, N * N):
        raise DomainError(
            f"Moments N={N}, M={moment} violate |M|^2 <= N(N+1)"
        )
    width = 2.0 * N + 1.0
    # (2N+1)^2 - 4|M|^2 = 1 + 4 * margin, so the radicand is at least 1 up to rounding
    thermal_width = math.sqrt(max(1.0, 1.0 + 4.0 * bath.squeezing_margin))
    ratio = min(1.0, 2.0 * abs(moment) / width)
    r = 0.5 * math.atanh(ratio) if ratio < 1.0 else math.inf
    if moment > 0:
        r = -r
    return SqueezingDecomposition(N_th=0.5 * (thermal_width - 1.0), r=r)
