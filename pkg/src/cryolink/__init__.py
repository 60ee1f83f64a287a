"""Heat-load, noise and SNR budgets for cryogenic qubit-control links."""

from cryolink.units import (
    CONSTANTS,
    PulseProfile,
    dbm_to_watts,
    peak_to_average,
    thermal_noise_floor,
    watts_to_dbm,
)

__all__ = [
    "CONSTANTS",
    "PulseProfile",
    "dbm_to_watts",
    "peak_to_average",
    "thermal_noise_floor",
    "watts_to_dbm",
]

__version__ = "0.1.0"
