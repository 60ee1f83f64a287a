"""Optical control link: minimum optical power and photodiode load.

A room-temperature Mach-Zehnder modulator puts the qubit pulse on an
optical carrier; a photodiode at the receiver stage converts it back and
a lossless matching network presents ``z_load`` to it. The load is fixed
by the microwave power the receiver must deliver,

    P_uw = i_sig^2 * z_load / 2,

so attenuation between receiver and qubit raises the load but leaves the
optical power, and therefore the heat, unchanged.
"""

from __future__ import annotations

import math
from collections.abc import Sequence
from dataclasses import dataclass, field, replace

from cryolink import solution
from cryolink.noise import (
    NoiseBreakdown,
    NoiseSource,
    TxNoiseConfig,
    link_snr,
    optical_noise,
    required_snr_peak,
)
from cryolink.solution import LinkSolution
from cryolink.thermal import DEFAULT_STAGES, StageChain
from cryolink.units import (
    CONSTANTS,
    DEFAULT_PROFILE,
    HALF_POWER_DB,
    PulseProfile,
    dbm_to_watts,
    loss_efficiency,
    peak_to_average,
    responsivity_limit,
    thermal_noise_floor,
)


@dataclass(frozen=True)
class PhotonicLinkDesign:
    responsivity: float = 0.1  # A/W
    epsilon_m: float = 1.0
    rx_stage: str = "4K"
    attenuation_below_rx: float = 30.0  # dB between receiver and qubit
    coupling_loss: float = HALF_POWER_DB  # dB, fiber-to-chip
    wdm_filter_loss: float = 0.0  # dB
    wdm_channels: int = 1
    filter_rejection: float = 60.0  # dB, checked but not modelled
    wavelength: float = 1550e-9  # m
    tx_noise: TxNoiseConfig = field(default_factory=TxNoiseConfig)
    profile: PulseProfile = DEFAULT_PROFILE
    snr_margin_db: float = 0.0

    def __post_init__(self) -> None:
        r_max = responsivity_limit(self.wavelength)
        if not 0 < self.responsivity <= r_max:
            raise ValueError(
                f"responsivity {self.responsivity} A/W outside (0, {r_max:.3f}] "
                f"at {self.wavelength * 1e9:.0f} nm"
            )
        if not 0 < self.epsilon_m <= 1:
            raise ValueError(f"epsilon_m must lie in (0, 1], got {self.epsilon_m}")
        if min(self.attenuation_below_rx, self.coupling_loss, self.wdm_filter_loss) < 0:
            raise ValueError("losses and attenuation must be >= 0 dB")
        if self.wdm_channels < 1:
            raise ValueError("wdm_channels must be >= 1")

    @property
    def path_efficiency(self) -> float:
        """Fraction of launched optical power reaching the photodiode."""
        return loss_efficiency(self.coupling_loss) * loss_efficiency(self.wdm_filter_loss)

    @classmethod
    def at_stage(cls, rx_stage: str, stages: StageChain = DEFAULT_STAGES, **kw) -> "PhotonicLinkDesign":
        """Design with the receiver on ``rx_stage``; the attenuation below it
        comes from the stage chain."""
        return cls(rx_stage=rx_stage, attenuation_below_rx=stages.attenuation_between(rx_stage), **kw)


def rx_30mk(**kw) -> PhotonicLinkDesign:
    return PhotonicLinkDesign.at_stage("30mK", **kw)


def rx_4k(**kw) -> PhotonicLinkDesign:
    return PhotonicLinkDesign.at_stage("4K", **kw)


def rx_4k_wdm(channels: int = 4, **kw) -> PhotonicLinkDesign:
    kw.setdefault("wdm_filter_loss", HALF_POWER_DB)
    return PhotonicLinkDesign.at_stage("4K", wdm_channels=channels, **kw)


def photocurrents(p_opt: float, eps: float, responsivity: float) -> tuple[float, float]:
    """(I_DC, I_signal) for average optical power ``p_opt`` at quadrature
    bias, small-signal model."""
    i_dc = responsivity * p_opt
    return i_dc, eps * i_dc


def stage_microwave_power(p_qubit_avg_dbm: float, attenuation_db: float) -> float:
    """Microwave power (W) the receiver must deliver ahead of the attenuation."""
    if attenuation_db < 0:
        raise ValueError("attenuation must be >= 0 dB")
    return dbm_to_watts(p_qubit_avg_dbm + attenuation_db)


def _quad_coeff(design: PhotonicLinkDesign) -> float:
    return design.tx_noise.rin_coefficient + design.tx_noise.eom_coefficient


def snr_at_power(p_opt: float, design: PhotonicLinkDesign) -> float:
    i_dc, i_sig = photocurrents(p_opt, design.epsilon_m, design.responsivity)
    return link_snr(i_sig, optical_noise(i_dc, design.tx_noise))


def solve_min_popt(
    p_qubit_peak_dbm: float,
    design: PhotonicLinkDesign,
    t_qubit: float = 0.030,
    method: str = "closed",
) -> LinkSolution:
    """Smallest optical power at the photodiode meeting the SNR requirement.

    ``method`` is "closed" (the default) or "bisect". Unreachable targets
    come back with ``feasible=False`` and the RIN-limited ceiling.
    """
    target = required_snr_peak(p_qubit_peak_dbm, t_qubit, design.profile, design.snr_margin_db)
    eps = design.epsilon_m
    ceiling = solution.snr_ceiling_db(eps, _quad_coeff(design))
    if method == "closed":
        i_dc = solution.min_current_closed_form(target, eps, 2.0 * CONSTANTS.q, _quad_coeff(design))
        p_opt = i_dc / design.responsivity
    elif method == "bisect":
        p_opt = solution.min_power_bisect(lambda p: snr_at_power(p, design), target)
    else:
        raise ValueError(f"unknown method {method!r}")

    if not math.isfinite(p_opt):
        tx = design.tx_noise
        worst = NoiseSource.RIN if tx.rin_coefficient >= tx.eom_coefficient else NoiseSource.EOM_THERMAL
        return LinkSolution(
            p_qubit_peak_dbm, target, ceiling, feasible=False, limiting_source=worst
        )
    return _fill(p_qubit_peak_dbm, p_opt, target, ceiling, design)


def _fill(p_peak, p_opt, target, ceiling, design: PhotonicLinkDesign) -> LinkSolution:
    i_dc, i_sig = photocurrents(p_opt, design.epsilon_m, design.responsivity)
    noise = optical_noise(i_dc, design.tx_noise)
    p_uw = stage_microwave_power(peak_to_average(p_peak, design.profile), design.attenuation_below_rx)
    snr = link_snr(i_sig, noise)
    return LinkSolution(
        p_qubit_peak_dbm=p_peak,
        required_snr_db=target,
        snr_ceiling_db=ceiling,
        # closed form lands on the target up to rounding
        feasible=snr >= target - 1e-9,
        p_opt=p_opt,
        p_opt_sideband=design.epsilon_m * p_opt,
        i_dc=i_dc,
        i_sig=i_sig,
        z_load=2.0 * p_uw / i_sig**2,
        p_uw_rx_stage=p_uw,
        p_active=p_opt / design.path_efficiency,
        noise=noise,
        snr_db=snr,
        limiting_source=noise.limiting_source,
    )


def feasibility_edge_dbm(design: PhotonicLinkDesign, t_qubit: float = 0.030) -> float:
    """Peak qubit power at which the required SNR meets the RIN ceiling."""
    ceiling = solution.snr_ceiling_db(design.epsilon_m, _quad_coeff(design))
    return ceiling + thermal_noise_floor(t_qubit) + design.profile.peak_to_avg_db - design.snr_margin_db


def zl_vs_attenuation(
    p_qubit_peak_dbm: float,
    attenuation_grid: Sequence[float],
    design: PhotonicLinkDesign,
    t_qubit: float = 0.030,
) -> list[tuple[float, float]]:
    """Load impedance against receiver-to-qubit attenuation.

    The optical solution does not depend on attenuation, so
    Z_L(A) = Z_L(0) * 10^(A/10).
    """
    if len(attenuation_grid) == 0:
        raise ValueError("attenuation grid is empty")
    base = solve_min_popt(p_qubit_peak_dbm, replace(design, attenuation_below_rx=0.0), t_qubit)
    return [(a, base.z_load * 10.0 ** (a / 10.0)) for a in attenuation_grid]


def attenuation_for_zl(
    p_qubit_peak_dbm: float, z_target: float, design: PhotonicLinkDesign, t_qubit: float = 0.030
) -> float:
    """Attenuation (dB) that brings the photodiode load to ``z_target``."""
    (_, z0), = zl_vs_attenuation(p_qubit_peak_dbm, [0.0], design, t_qubit)
    return 10.0 * math.log10(z_target / z0)


@dataclass(frozen=True)
class NoiseSweep:
    rows: list[LinkSolution]
    crossover_dbm: float | None  # peak qubit power where shot == RIN


def _rin_minus_shot(p_peak: float, design: PhotonicLinkDesign, t_qubit: float) -> float:
    sol = solve_min_popt(p_peak, design, t_qubit)
    if not sol.feasible:
        return math.inf
    return sol.noise.rin - sol.noise.shot


def noise_breakdown_sweep(
    p_qubit_peak_grid: Sequence[float],
    design: PhotonicLinkDesign,
    t_qubit: float = 0.030,
) -> NoiseSweep:
    """Noise components at the solved minimum power for each grid point."""
    grid = list(p_qubit_peak_grid)
    if grid != sorted(grid):
        raise ValueError("grid must be sorted")
    rows = [solve_min_popt(p, design, t_qubit) for p in grid]
    return NoiseSweep(rows, shot_rin_crossover(design, t_qubit))


def shot_rin_crossover(
    design: PhotonicLinkDesign, t_qubit: float = 0.030, lo: float = -150.0
) -> float | None:
    """Peak qubit power (dBm) where RIN overtakes shot noise, found by
    bisection on solved design points; None if the link turns infeasible
    first."""
    hi = feasibility_edge_dbm(design, t_qubit)
    if _rin_minus_shot(lo, design, t_qubit) >= 0:
        return None
    hi_probe = hi - 1e-9
    if _rin_minus_shot(hi_probe, design, t_qubit) < 0:
        return None
    hi = hi_probe
    while hi - lo > 1e-9:
        mid = 0.5 * (lo + hi)
        if _rin_minus_shot(mid, design, t_qubit) < 0:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def wdm_heat_per_qubit(base: LinkSolution, wdm_filter_loss: float = HALF_POWER_DB) -> float:
    """Heat per qubit once a WDM channel filter sits in front of the
    photodiode of a solved non-WDM receiver."""
    if not base.feasible:
        raise ValueError("base solution is infeasible")
    return base.p_active / loss_efficiency(wdm_filter_loss)
