"""
Bose-Einstein occupations and their inverse.
"""

import math

from scipy.constants import hbar, k as k_B

from utils.errors import DomainError


def thermal_occupation(temperature: float, frequency: float) -> float:
    """Mean occupation 1/(exp(ħω/k_BT) − 1) of a mode at angular frequency `frequency` (rad/s)."""
    if temperature < 0:
        raise DomainError(f"Temperature must be non-negative, got {temperature}")
    if frequency <= 0:
        raise DomainError(f"Frequency must be positive, got {frequency}")
    if temperature == 0:
        return 0.0
    return 1.0 / math.expm1(hbar * frequency / (k_B * temperature))


def occupation_temperature(nbar: float, frequency: float) -> float:
    """Temperature (K) at which a mode of angular frequency `frequency` holds nbar quanta."""
    if nbar < 0:
        raise DomainError(f"Mean occupation must be non-negative, got {nbar}")
    if frequency <= 0:
        raise DomainError(f"Frequency must be positive, got {frequency}")
    if nbar == 0:
        return 0.0
    return hbar * frequency / (k_B * math.log1p(1.0 / nbar))
