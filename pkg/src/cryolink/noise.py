"""Photocurrent noise PSDs and SNR bookkeeping.

All PSDs are one-sided current densities in A^2/Hz. SNR is reported as
20*log10(i_sig / sqrt(S_total)), i.e. dB referenced to a 1 Hz bandwidth,
which is the convention the SNR requirement below is expressed in.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

from cryolink.units import CONSTANTS, peak_to_average, thermal_noise_floor, PulseProfile, DEFAULT_PROFILE


class NoiseSource(str, enum.Enum):
    SHOT = "shot"
    RIN = "rin"
    EOM_THERMAL = "eom_thermal"
    PHASE_NOISE = "phase_noise"


@dataclass(frozen=True)
class TxNoiseConfig:
    """Transmitter-side noise parameters."""

    rin_db: float = -150.0  # dB/Hz
    v_pi: float = 2.0  # V
    z_dr: float = 50.0  # Ohm, modulator electrode impedance
    t_tx: float = 300.0  # K
    pn_dbc: float = -120.0  # dBc/Hz, sub-THz source only

    def __post_init__(self) -> None:
        if not (self.rin_db < 0 and self.pn_dbc < 0):
            raise ValueError("rin_db and pn_dbc must be negative")
        if not (self.v_pi > 0 and self.z_dr > 0 and self.t_tx > 0):
            raise ValueError("v_pi, z_dr and t_tx must be positive")

    @property
    def rin_coefficient(self) -> float:
        """RIN PSD per I_DC^2 (1/Hz)."""
        return 10.0 ** (self.rin_db / 10.0)

    @property
    def eom_coefficient(self) -> float:
        """Modulator thermal-noise PSD per I_DC^2 (1/Hz)."""
        return 4.0 * CONSTANTS.k_B * self.t_tx * self.z_dr * (math.pi / self.v_pi) ** 2


def _check_current(i_dc: float) -> None:
    if i_dc < 0 or math.isnan(i_dc):
        raise ValueError(f"photocurrent must be >= 0, got {i_dc!r}")


def shot_psd(i_dc: float) -> float:
    _check_current(i_dc)
    return 2.0 * CONSTANTS.q * i_dc


def rin_psd(rin_db: float, i_dc: float) -> float:
    _check_current(i_dc)
    return 10.0 ** (rin_db / 10.0) * i_dc**2


def eom_thermal_psd(cfg: TxNoiseConfig, i_dc: float) -> float:
    """Room-temperature Johnson noise on the modulator electrodes,
    transferred to the photocurrent through the pi*I_DC/V_pi slope."""
    _check_current(i_dc)
    return cfg.eom_coefficient * i_dc**2


def phase_noise_psd(pn_dbc: float, i_dc: float) -> float:
    """Source phase noise as it enters the sub-THz SNR: (10^(PN/10) * I_DC)^2.

    Squared verbatim, so the dimensions are A^2 rather than A^2/Hz. The
    term is many orders below shot noise at practical currents.
    """
    _check_current(i_dc)
    return (10.0 ** (pn_dbc / 10.0) * i_dc) ** 2


@dataclass(frozen=True)
class NoiseBreakdown:
    shot: float = 0.0
    rin: float = 0.0
    eom_thermal: float = 0.0
    phase_noise: float = 0.0

    def __post_init__(self) -> None:
        for name in ("shot", "rin", "eom_thermal", "phase_noise"):
            v = getattr(self, name)
            if v < 0:
                raise ValueError(f"{name} PSD must be >= 0")

    @property
    def total(self) -> float:
        return self.shot + self.rin + self.eom_thermal + self.phase_noise

    @property
    def limiting_source(self) -> NoiseSource:
        components = {
            NoiseSource.SHOT: self.shot,
            NoiseSource.RIN: self.rin,
            NoiseSource.EOM_THERMAL: self.eom_thermal,
            NoiseSource.PHASE_NOISE: self.phase_noise,
        }
        return max(components, key=components.__getitem__)

    @classmethod
    def nan(cls) -> "NoiseBreakdown":
        return cls(math.nan, math.nan, math.nan, math.nan)


def optical_noise(i_dc: float, tx: TxNoiseConfig) -> NoiseBreakdown:
    """Shot + RIN + modulator thermal noise at a photodiode."""
    return NoiseBreakdown(
        shot=shot_psd(i_dc),
        rin=rin_psd(tx.rin_db, i_dc),
        eom_thermal=eom_thermal_psd(tx, i_dc),
    )


def subthz_noise(i_dc: float, pn_dbc: float) -> NoiseBreakdown:
    """Shot + source phase noise at a sub-THz detector."""
    return NoiseBreakdown(shot=shot_psd(i_dc), phase_noise=phase_noise_psd(pn_dbc, i_dc))


def required_snr(p_avg_qubit_dbm: float, t_qubit: float, margin_db: float = 0.0) -> float:
    """SNR (dB, 1 Hz reference) putting the delivered noise at the qubit's
    thermal floor."""
    return p_avg_qubit_dbm - thermal_noise_floor(t_qubit) + margin_db


def required_snr_peak(
    p_peak_qubit_dbm: float,
    t_qubit: float,
    profile: PulseProfile = DEFAULT_PROFILE,
    margin_db: float = 0.0,
) -> float:
    return required_snr(peak_to_average(p_peak_qubit_dbm, profile), t_qubit, margin_db)


def link_snr(i_sig: float, noise: NoiseBreakdown) -> float:
    """20*log10(i_sig / sqrt(S_total)).

    Returns +inf for noiseless links and -inf for zero signal.
    """
    if i_sig < 0:
        raise ValueError("signal current must be >= 0")
    total = noise.total
    if i_sig == 0:
        return -math.inf
    if total == 0:
        return math.inf
    return 20.0 * math.log10(i_sig / math.sqrt(total))


def in_band_snr(snr_db_hz: float, bandwidth_hz: float) -> float:
    """Integrated SNR (dB) over a signal bandwidth."""
    return snr_db_hz - 10.0 * math.log10(bandwidth_hz)


def filter_rejection_ok(rejection_db: float, minimum_db: float = 60.0) -> bool:
    """Pass/fail check on a WDM channel filter's out-of-band rejection."""
    return rejection_db >= minimum_db
