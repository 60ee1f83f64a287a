"""Sub-THz control link with a cryogenic MOSFET peak detector at 4 K.

Noise is detector shot noise plus transmitter phase noise. The modulated
sideband power at the detector, P, sets both currents when the carrier
carries as much power as the sideband.
"""

from __future__ import annotations

import math
from collections.abc import Sequence
from dataclasses import dataclass

from cryolink import photonic, solution
from cryolink.noise import NoiseSource, link_snr, required_snr_peak, subthz_noise
from cryolink.solution import LinkSolution
from cryolink.units import CONSTANTS, DEFAULT_PROFILE, HALF_POWER_DB, PulseProfile, db_to_ratio, peak_to_average


@dataclass(frozen=True)
class SubThzLinkDesign:
    responsivity: float = 1.0  # A/W
    pn_dbc: float = -120.0  # dBc/Hz
    coupler_loss: float = HALF_POWER_DB  # dB, chip-to-waveguide
    waveguide_loss: float = HALF_POWER_DB  # dB, 4 K span
    attenuation_below_rx: float = 30.0  # dB
    carrier_equals_sideband: bool = True
    carrier_to_sideband_db: float = 0.0  # used only when the flag is off
    profile: PulseProfile = DEFAULT_PROFILE
    snr_margin_db: float = 0.0

    def __post_init__(self) -> None:
        if not self.responsivity > 0:
            raise ValueError("responsivity must be positive")
        if min(self.coupler_loss, self.waveguide_loss, self.attenuation_below_rx) < 0:
            raise ValueError("losses must be >= 0 dB")
        if not self.pn_dbc < 0:
            raise ValueError("pn_dbc must be negative")

    @property
    def dc_ratio(self) -> float:
        """I_DC / I_signal."""
        if self.carrier_equals_sideband:
            return 1.0
        return db_to_ratio(self.carrier_to_sideband_db)

    @property
    def loss_factor(self) -> float:
        return db_to_ratio(self.coupler_loss + self.waveguide_loss)


def _currents(p: float, design: SubThzLinkDesign) -> tuple[float, float]:
    i_sig = design.responsivity * p
    return i_sig * design.dc_ratio, i_sig


def snr_at_power(p: float, design: SubThzLinkDesign) -> float:
    i_dc, i_sig = _currents(p, design)
    return link_snr(i_sig, subthz_noise(i_dc, design.pn_dbc))


def solve_min_psubthz(
    p_qubit_peak_dbm: float,
    design: SubThzLinkDesign = SubThzLinkDesign(),
    t_qubit: float = 0.030,
    method: str = "closed",
) -> LinkSolution:
    """Smallest sideband power at the detector meeting the SNR requirement.

    ``p_opt`` and ``p_opt_sideband`` of the result both hold that detector
    power; ``p_active`` adds the coupler and waveguide losses.
    """
    target = required_snr_peak(p_qubit_peak_dbm, t_qubit, design.profile, design.snr_margin_db)
    # in terms of I_DC: i_sig = I_DC / dc_ratio, noise = 2q I + 10^(PN/5) I^2
    gain = 1.0 / design.dc_ratio
    quad = 10.0 ** (design.pn_dbc / 5.0)
    ceiling = solution.snr_ceiling_db(gain, quad)
    if method == "closed":
        i_dc = solution.min_current_closed_form(target, gain, 2.0 * CONSTANTS.q, quad)
        p = i_dc / design.dc_ratio / design.responsivity
    elif method == "bisect":
        p = solution.min_power_bisect(lambda x: snr_at_power(x, design), target)
    else:
        raise ValueError(f"unknown method {method!r}")
    if not math.isfinite(p):
        return LinkSolution(
            p_qubit_peak_dbm, target, ceiling, feasible=False, limiting_source=NoiseSource.PHASE_NOISE
        )

    i_dc, i_sig = _currents(p, design)
    noise = subthz_noise(i_dc, design.pn_dbc)
    p_uw = photonic.stage_microwave_power(
        peak_to_average(p_qubit_peak_dbm, design.profile), design.attenuation_below_rx
    )
    snr = link_snr(i_sig, noise)
    return LinkSolution(
        p_qubit_peak_dbm=p_qubit_peak_dbm,
        required_snr_db=target,
        snr_ceiling_db=ceiling,
        feasible=snr >= target - 1e-9,
        p_opt=p,
        p_opt_sideband=p,
        i_dc=i_dc,
        i_sig=i_sig,
        z_load=2.0 * p_uw / i_sig**2,
        p_uw_rx_stage=p_uw,
        p_active=p * design.loss_factor,
        noise=noise,
        snr_db=snr,
        limiting_source=noise.limiting_source,
    )


def phase_noise_crossover_power(design: SubThzLinkDesign = SubThzLinkDesign()) -> float:
    """Detector power (W) above which phase noise would exceed shot noise."""
    i_dc = 2.0 * CONSTANTS.q / 10.0 ** (design.pn_dbc / 5.0)
    return i_dc / design.dc_ratio / design.responsivity


@dataclass(frozen=True)
class HeatRow:
    p_qubit_peak_dbm: float
    subthz: float
    photonic_4k: float
    photonic_wdm: float

    CSV_COLUMNS = (
        "p_qubit_peak_dbm",
        "subthz_p_active_w",
        "photonic_4k_p_active_w",
        "photonic_wdm_p_active_w",
    )

    def csv_row(self) -> tuple:
        return (self.p_qubit_peak_dbm, self.subthz, self.photonic_4k, self.photonic_wdm)


def subthz_heat_sweep(
    p_qubit_grid: Sequence[float],
    design: SubThzLinkDesign = SubThzLinkDesign(),
    photonic_design: photonic.PhotonicLinkDesign | None = None,
    wdm_design: photonic.PhotonicLinkDesign | None = None,
    t_qubit: float = 0.030,
) -> list[HeatRow]:
    """Heat per qubit at the 4 K receiver for the three link options.
    Infeasible points carry NaN."""
    grid = list(p_qubit_grid)
    if grid != sorted(grid):
        raise ValueError("grid must be sorted")
    photonic_design = photonic_design or photonic.rx_4k()
    wdm_design = wdm_design or photonic.rx_4k_wdm()
    rows = []
    for p in grid:
        rows.append(
            HeatRow(
                p,
                solve_min_psubthz(p, design, t_qubit).p_active,
                photonic.solve_min_popt(p, photonic_design, t_qubit).p_active,
                photonic.solve_min_popt(p, wdm_design, t_qubit).p_active,
            )
        )
    return rows
