"""
Normal-modes package for OPTOTTO application.
"""

from .approximations import BranchSide, approx_population_B
from .bogoliubov import (
    BogoliubovMatrices,
    PolaritonBranch,
    bogoliubov_numeric,
    dynamical_matrix,
    polariton_annihilation_op,
    polariton_number_operator,
    thermal_polariton_populations,
    track_branches,
)
from .spectrum import PolaritonSpectrum, avoided_crossing_gap, polariton_frequencies, stability_check

__all__ = [
    "BranchSide",
    "approx_population_B",
    "BogoliubovMatrices",
    "PolaritonBranch",
    "bogoliubov_numeric",
    "dynamical_matrix",
    "polariton_annihilation_op",
    "polariton_number_operator",
    "thermal_polariton_populations",
    "track_branches",
    "PolaritonSpectrum",
    "avoided_crossing_gap",
    "polariton_frequencies",
    "stability_check",
]
