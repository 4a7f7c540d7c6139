"""
Squeezed bath package for OPTOTTO application.
"""

from .effective import (
    EffectiveBath,
    QuadratureStats,
    SqueezingDecomposition,
    effective_bath_exact,
    squeezed_thermal_moments,
    squeezing_decomposition,
    steady_variances,
)
from .evolution import (
    LAB,
    ROTATING,
    evolve_effective_B,
    quadrature_variances,
    required_cutoff,
    thermal_deviation_chi2,
)

__all__ = [
    "EffectiveBath",
    "QuadratureStats",
    "SqueezingDecomposition",
    "effective_bath_exact",
    "squeezed_thermal_moments",
    "squeezing_decomposition",
    "steady_variances",
    "LAB",
    "ROTATING",
    "evolve_effective_B",
    "quadrature_variances",
    "required_cutoff",
    "thermal_deviation_chi2",
]
