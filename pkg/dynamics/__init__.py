"""
Dynamics package for OPTOTTO application.
"""

from .integrator import Trajectory, rk4_evolve, rk4_integrate, spectral_radius
from .lindblad import Dissipator, LindbladGenerator, lindblad_rhs, master_dissipators
from .oracle import expm_oracle, liouvillian_superoperator

__all__ = [
    "Trajectory",
    "rk4_evolve",
    "rk4_integrate",
    "spectral_radius",
    "Dissipator",
    "LindbladGenerator",
    "lindblad_rhs",
    "master_dissipators",
    "expm_oracle",
    "liouvillian_superoperator",
]
