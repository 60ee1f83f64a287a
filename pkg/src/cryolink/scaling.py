"""Qubit-count projections, the cable-density figure of merit, and
shot-noise gate error."""

from __future__ import annotations

import configparser
import math
from collections.abc import Sequence
from dataclasses import dataclass, replace
from importlib import resources
from pathlib import Path

from cryolink import photonic, subthz
from cryolink.units import photon_energy

FIBER_PITCH = 250e-6  # m, ribbon pitch for 127 um cladding
WAVEGUIDE_PITCH = 2e-3  # m, 1 mm core plus spacing
COOLING_4K = 1.5  # W

LINK_KINDS = ("photonic", "photonic_wdm", "subthz", "fixed")


@dataclass(frozen=True)
class ScalingScenario:
    """One point of a scalability comparison.

    ``p_active_per_qubit`` may be left as None for the link solvers to fill
    in; ``link = "fixed"`` rows (external comparison points) must set it.
    """

    label: str
    link: str = "photonic_wdm"
    p_cooling: float = COOLING_4K
    p_active_per_qubit: float | None = None
    pitch: float = FIBER_PITCH
    n_qubit_per_cable: int = 1
    t_qubit: float = 0.030
    responsivity: float = 0.1
    p_qubit_peak_dbm: float = -70.0
    note: str = ""

    def __post_init__(self) -> None:
        if self.link not in LINK_KINDS:
            raise ValueError(f"unknown link kind {self.link!r}")
        if self.link == "fixed" and self.p_active_per_qubit is None:
            raise ValueError(f"{self.label}: fixed scenarios need p_active_per_qubit")
        if min(self.p_cooling, self.pitch, self.t_qubit, self.responsivity) <= 0:
            raise ValueError(f"{self.label}: parameters must be positive")
        if self.p_active_per_qubit is not None and self.p_active_per_qubit <= 0:
            raise ValueError(f"{self.label}: p_active_per_qubit must be positive")
        if self.n_qubit_per_cable < 1:
            raise ValueError(f"{self.label}: n_qubit_per_cable must be >= 1")


def fom(s: ScalingScenario) -> float:
    """Cooling budget over heat-times-pitch per qubit (1/m)."""
    if s.p_active_per_qubit is None:
        raise ValueError(f"{s.label}: heat per qubit not resolved")
    denom = s.p_active_per_qubit * s.pitch / s.n_qubit_per_cable
    if denom <= 0:
        raise ValueError("zero heat-pitch product")
    return s.p_cooling / denom


def max_qubits(p_cooling: float, p_active_per_qubit: float) -> int:
    """Whole qubits that fit within the cooling budget."""
    if p_cooling <= 0 or p_active_per_qubit <= 0:
        raise ValueError("inputs must be positive")
    # 1.5 / 2e-4 lands one ulp under 7500 in binary floating point
    return math.floor(p_cooling / p_active_per_qubit * (1.0 + 1e-12))


def photons_per_gate(p_opt: float, gate_duration: float, wavelength: float = 1550e-9) -> float:
    return gate_duration * p_opt / photon_energy(wavelength)


def gate_error(p_opt: float, gate_duration: float = 20e-9, wavelength: float = 1550e-9) -> float:
    """Shot-noise-limited error of a pi pulse: (pi/2)^2 / N_photons."""
    if min(p_opt, gate_duration, wavelength) <= 0:
        raise ValueError("inputs must be positive")
    return (math.pi / 2.0) ** 2 / photons_per_gate(p_opt, gate_duration, wavelength)


def resolve(s: ScalingScenario) -> ScalingScenario:
    """Fill ``p_active_per_qubit`` from the matching link solver."""
    if s.p_active_per_qubit is not None:
        return s
    if s.link == "subthz":
        sol = subthz.solve_min_psubthz(
            s.p_qubit_peak_dbm, subthz.SubThzLinkDesign(responsivity=s.responsivity), s.t_qubit
        )
    else:
        if s.link == "photonic_wdm":
            design = photonic.rx_4k_wdm(channels=s.n_qubit_per_cable, responsivity=s.responsivity)
        else:
            design = photonic.rx_4k(responsivity=s.responsivity)
        sol = photonic.solve_min_popt(s.p_qubit_peak_dbm, design, s.t_qubit)
    # infeasible points propagate as NaN heat
    return replace(s, p_active_per_qubit=sol.p_active if sol.feasible else math.nan)


@dataclass(frozen=True)
class ProjectionRow:
    label: str
    link: str
    responsivity: float
    t_qubit: float
    p_active_per_qubit: float
    max_qubits: int | None
    cables: int | None
    fom: float

    CSV_COLUMNS = (
        "label",
        "link",
        "responsivity_a_per_w",
        "t_qubit_k",
        "p_active_w",
        "max_qubits",
        "cables",
        "fom_per_m",
    )

    def csv_row(self) -> tuple:
        return (
            self.label,
            self.link,
            self.responsivity,
            self.t_qubit,
            self.p_active_per_qubit,
            self.max_qubits,
            self.cables,
            self.fom,
        )


def projection_table(scenarios: Sequence[ScalingScenario]) -> list[ProjectionRow]:
    rows = []
    for s in scenarios:
        s = resolve(s)
        p = s.p_active_per_qubit
        if p is None or math.isnan(p):
            n = cables = None
            merit = math.nan
        else:
            n = max_qubits(s.p_cooling, p)
            cables = math.ceil(n / s.n_qubit_per_cable)
            merit = fom(s)
        rows.append(ProjectionRow(s.label, s.link, s.responsivity, s.t_qubit, p, n, cables, merit))
    return rows


def fom_scenarios(p_qubit_peak_dbm: float, fiber_pitch: float = FIBER_PITCH,
                  waveguide_pitch: float = WAVEGUIDE_PITCH, wdm_channels: int = 4,
                  p_cooling: float = COOLING_4K) -> list[ScalingScenario]:
    """The three 4 K link options compared by the figure of merit."""
    return [
        ScalingScenario("subthz", "subthz", p_cooling, pitch=waveguide_pitch, responsivity=1.0,
                        p_qubit_peak_dbm=p_qubit_peak_dbm),
        ScalingScenario("photonic_4k", "photonic", p_cooling, pitch=fiber_pitch,
                        p_qubit_peak_dbm=p_qubit_peak_dbm),
        ScalingScenario("photonic_wdm", "photonic_wdm", p_cooling, pitch=fiber_pitch,
                        n_qubit_per_cable=wdm_channels, p_qubit_peak_dbm=p_qubit_peak_dbm),
    ]


_SCENARIO_FLOATS = ("p_cooling", "p_active_per_qubit", "pitch", "t_qubit", "responsivity", "p_qubit_peak_dbm")


def load_scenarios(path: str | Path | None = None) -> list[ScalingScenario]:
    """Scenario file: one INI section per scenario, keys named after the
    ScalingScenario fields. None loads the packaged outlook set."""
    parser = configparser.ConfigParser(interpolation=None)
    if path is None:
        text = resources.files("cryolink").joinpath("data/scenarios.ini").read_text()
        parser.read_string(text, source="<default scenarios>")
    else:
        with open(path, encoding="utf-8") as fh:
            parser.read_file(fh)
    known = set(_SCENARIO_FLOATS) | {"link", "n_qubit_per_cable", "note"}
    out = []
    for label in parser.sections():
        sec = parser[label]
        unknown = set(sec) - known
        if unknown:
            raise KeyError(f"scenario {label!r}: unknown keys {sorted(unknown)}")
        kw = {k: float(sec[k]) for k in _SCENARIO_FLOATS if k in sec}
        if "n_qubit_per_cable" in sec:
            kw["n_qubit_per_cable"] = int(sec["n_qubit_per_cable"])
        out.append(ScalingScenario(label, sec.get("link", "photonic_wdm"), note=sec.get("note", ""), **kw))
    return out
