"""Physical constants and dB/linear power conversions.

Everything inside the package is SI (W, A, Ohm, Hz, K). dB and dBm only
appear at function boundaries.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass


@dataclass(frozen=True)
class PhysicalConstants:
    q: float = 1.602176634e-19  # C
    k_B: float = 1.380649e-23  # J/K
    hbar: float = 1.054571817e-34  # J s
    c: float = 299792458.0  # m/s


CONSTANTS = PhysicalConstants()


def _require_finite(name: str, value: float) -> None:
    if not math.isfinite(value):
        raise ValueError(f"{name} must be finite, got {value!r}")


def dbm_to_watts(p_dbm: float) -> float:
    """Convert a power in dBm to watts."""
    _require_finite("p_dbm", p_dbm)
    return 10.0 ** (p_dbm / 10.0) * 1e-3


def watts_to_dbm(p_w: float) -> float:
    """Convert a power in watts to dBm. Zero maps to -inf."""
    if p_w < 0 or math.isnan(p_w):
        raise ValueError(f"power must be non-negative, got {p_w!r}")
    if p_w == 0:
        return -math.inf
    return 10.0 * math.log10(p_w * 1e3)


def db_to_ratio(x_db: float) -> float:
    """Linear power ratio of a value in dB."""
    return 10.0 ** (x_db / 10.0)


def ratio_to_db(x: float) -> float:
    return 10.0 * math.log10(x)


def loss_efficiency(loss_db: float) -> float:
    """Fraction of power surviving an insertion loss given in dB."""
    if loss_db < 0:
        raise ValueError(f"loss must be >= 0 dB, got {loss_db}")
    return 10.0 ** (-loss_db / 10.0)


# A "3 dB" component halves the power; the budgets in this package use the
# exact factor of two.
HALF_POWER_DB = 10.0 * math.log10(2.0)


def thermal_noise_floor(t_k: float) -> float:
    """Thermal noise PSD k_B*T in dBm/Hz.

    >>> round(thermal_noise_floor(300.0), 1)
    -173.8
    """
    if not t_k > 0:
        raise ValueError(f"temperature must be > 0 K, got {t_k!r}")
    return 10.0 * math.log10(CONSTANTS.k_B * t_k * 1e3)


class PulseShape(str, enum.Enum):
    GAUSSIAN = "gaussian"
    RAISED_COSINE = "raised_cosine"
    RECTANGULAR = "rectangular"


@dataclass(frozen=True)
class PulseProfile:
    """Qubit drive pulse statistics.

    ``peak_to_avg_db`` is kept as a single opaque number. The default
    (Gaussian pulses at 30 % activity) is taken as exactly 10 dB rather
    than integrated from the pulse shape.
    """

    shape: PulseShape = PulseShape.GAUSSIAN
    activity: float = 0.3
    peak_to_avg_db: float = 10.0

    def __post_init__(self) -> None:
        if not 0.0 < self.activity <= 1.0:
            raise ValueError(f"activity must lie in (0, 1], got {self.activity}")
        if not self.peak_to_avg_db >= 0.0:
            raise ValueError(f"peak_to_avg_db must be >= 0, got {self.peak_to_avg_db}")
        object.__setattr__(self, "shape", PulseShape(self.shape))


DEFAULT_PROFILE = PulseProfile()


def peak_to_average(p_peak_dbm: float, profile: PulseProfile = DEFAULT_PROFILE) -> float:
    """Average qubit drive power (dBm) for a given peak power (dBm)."""
    return p_peak_dbm - profile.peak_to_avg_db


def photon_energy(wavelength_m: float) -> float:
    """hbar*omega of an optical carrier, J."""
    if not wavelength_m > 0:
        raise ValueError("wavelength must be positive")
    omega = 2.0 * math.pi * CONSTANTS.c / wavelength_m
    return CONSTANTS.hbar * omega


def responsivity_limit(wavelength_m: float = 1550e-9) -> float:
    """Unity-quantum-efficiency photodiode responsivity q/(hbar*omega), A/W."""
    return CONSTANTS.q / photon_energy(wavelength_m)
