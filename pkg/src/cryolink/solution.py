"""Design-point record and the minimum-power search shared by both links.

Both links have a signal current proportional to the DC photocurrent,
i_sig = g * I, and a noise PSD of the form s*I + c*I^2. The linear SNR
target S then gives

    I * (g^2 - S^2 c) = S^2 s,

which has a positive root only while g^2 > S^2 c. Above that the
quadratic noise term caps the SNR at 20*log10(g / sqrt(c)).
"""

from __future__ import annotations

import math
from collections.abc import Callable
from dataclasses import dataclass, field

from cryolink.noise import NoiseBreakdown, NoiseSource

# bracket for the bisection fallback, expressed as detector power (W)
BISECT_BRACKET = (1e-12, 10.0)
BISECT_RTOL = 1e-4


@dataclass(frozen=True)
class LinkSolution:
    p_qubit_peak_dbm: float
    required_snr_db: float
    snr_ceiling_db: float
    feasible: bool
    p_opt: float = math.nan  # detector input power (carrier + modulation), W
    p_opt_sideband: float = math.nan
    i_dc: float = math.nan
    i_sig: float = math.nan
    z_load: float = math.nan
    p_uw_rx_stage: float = math.nan  # microwave power at the receiver stage, W
    p_active: float = math.nan  # heat dissipated at the receiver stage per qubit, W
    noise: NoiseBreakdown = field(default_factory=NoiseBreakdown.nan)
    snr_db: float = math.nan
    limiting_source: NoiseSource = NoiseSource.SHOT

    CSV_COLUMNS = (
        "p_qubit_peak_dbm",
        "p_opt_w",
        "z_load_ohm",
        "p_active_w",
        "snr_db",
        "limiting_source",
        "feasible",
    )

    def csv_row(self) -> tuple:
        return (
            self.p_qubit_peak_dbm,
            self.p_opt,
            self.z_load,
            self.p_active,
            self.snr_db,
            self.limiting_source.value,
            self.feasible,
        )


def snr_ceiling_db(gain: float, quad_coeff: float) -> float:
    if quad_coeff <= 0:
        return math.inf
    return 20.0 * math.log10(gain / math.sqrt(quad_coeff))


def min_current_closed_form(snr_db: float, gain: float, shot_coeff: float, quad_coeff: float) -> float:
    """Smallest DC current meeting ``snr_db``; inf when unreachable."""
    s2 = 10.0 ** (snr_db / 10.0)
    denom = gain**2 - s2 * quad_coeff
    if denom <= 0:
        return math.inf
    return s2 * shot_coeff / denom


def min_power_bisect(
    snr_of_power: Callable[[float], float],
    target_db: float,
    bracket: tuple[float, float] = BISECT_BRACKET,
    rtol: float = BISECT_RTOL,
) -> float:
    """Smallest power whose SNR meets ``target_db``, by bisection in log
    space. ``snr_of_power`` must be non-decreasing. Returns inf if even the
    top of the bracket falls short."""
    lo, hi = bracket
    if snr_of_power(hi) < target_db:
        return math.inf
    if snr_of_power(lo) >= target_db:
        return lo
    while hi / lo - 1.0 > rtol:
        mid = math.sqrt(lo * hi)
        if snr_of_power(mid) >= target_db:
            hi = mid
        else:
            lo = mid
    return hi
