"""Passive conduction heat load of cables spanning cryostat stages.

The load of a cable between two plates follows from Fourier's law with
temperature-dependent conductivities,

    P = (A_o * I_o + A_d * I_d + A_c * I_c) / L,   I_x = int k_x(T) dT,

where the integrals run over the plate temperatures.
"""

from __future__ import annotations

import configparser
import logging
import math
from collections.abc import Callable, Sequence
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

import numpy as np

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class MaterialModel:
    """Piecewise log-polynomial conductivity fit.

    ``breakpoints`` are the piece boundaries in K and ``coefficients[i]``
    gives log10(k) as a polynomial in log10(T) on piece ``i``.
    """

    name: str
    breakpoints: tuple[float, ...]
    coefficients: tuple[tuple[float, ...], ...]
    description: str = ""

    def __post_init__(self) -> None:
        if len(self.breakpoints) < 2:
            raise ValueError(f"{self.name}: need at least two breakpoints")
        if len(self.coefficients) != len(self.breakpoints) - 1:
            raise ValueError(
                f"{self.name}: {len(self.breakpoints) - 1} pieces but "
                f"{len(self.coefficients)} coefficient sets"
            )
        if any(b <= 0 for b in self.breakpoints):
            raise ValueError(f"{self.name}: breakpoints must be positive")
        if any(b1 <= b0 for b0, b1 in zip(self.breakpoints, self.breakpoints[1:])):
            raise ValueError(f"{self.name}: breakpoints must increase")
        for t in self.breakpoints[1:-1]:
            i = self.breakpoints.index(t)
            lo = _logpoly(self.coefficients[i - 1], t)
            hi = _logpoly(self.coefficients[i], t)
            if abs(hi / lo - 1.0) > 0.01:
                raise ValueError(f"{self.name}: fit discontinuous by >1% at {t} K")

    @property
    def valid_range(self) -> tuple[float, float]:
        return self.breakpoints[0], self.breakpoints[-1]

    def conductivity(self, t_k: float) -> float:
        """k(T) in W/(m K). Temperatures below the fit are clamped."""
        t_min, t_max = self.valid_range
        if t_k > t_max:
            raise ValueError(f"{self.name}: T = {t_k} K above fit maximum {t_max} K")
        t = max(t_k, t_min)
        piece = 0
        while piece < len(self.coefficients) - 1 and t > self.breakpoints[piece + 1]:
            piece += 1
        return _logpoly(self.coefficients[piece], t)


def _logpoly(coeffs: Sequence[float], t_k: float) -> float:
    x = math.log10(t_k)
    acc = 0.0
    for a in reversed(coeffs):
        acc = acc * x + a
    return 10.0**acc




def constant_material(name: str, k: float, t_range: tuple[float, float] = (1e-3, 1e4)) -> MaterialModel:
    """A material with temperature-independent conductivity ``k``."""
    if not k > 0:
        raise ValueError("conductivity must be positive")
    return MaterialModel(name, tuple(t_range), ((math.log10(k),),), "constant")


def load_materials(path: str | Path | None = None) -> dict[str, MaterialModel]:
    """Read a materials file; the packaged defaults when ``path`` is None."""
    parser = configparser.ConfigParser(interpolation=None)
    if path is None:
        text = resources.files("cryolink").joinpath("data/materials.ini").read_text()
        parser.read_string(text, source="<default materials>")
    else:
        with open(path, encoding="utf-8") as fh:
            parser.read_file(fh)
    materials = {}
    for name in parser.sections():
        sec = parser[name]
        breakpoints = tuple(_floats(sec["breakpoints"]))
        coeffs = []
        for i in range(len(breakpoints) - 1):
            key = f"coefficients.{i}"
            if key not in sec:
                raise ValueError(f"material {name!r}: missing {key}")
            coeffs.append(tuple(_floats(sec[key])))
        materials[name] = MaterialModel(
            name, breakpoints, tuple(coeffs), sec.get("description", "")
        )
    return materials


def _floats(text: str) -> list[float]:
    return [float(tok) for tok in text.replace("\n", " ").split(",") if tok.strip()]


def adaptive_simpson(
    f: Callable[[float], float],
    a: float,
    b: float,
    rel_tol: float = 1e-6,
    max_depth: int = 50,
) -> float:
    """Integrate ``f`` over [a, b] with recursive adaptive Simpson."""
    if a == b:
        return 0.0
    if a > b:
        return -adaptive_simpson(f, b, a, rel_tol, max_depth)

    fa, fb = f(a), f(b)
    m = 0.5 * (a + b)
    fm = f(m)
    whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb)
    # absolute target from a coarse magnitude estimate; keeps the
    # tolerance meaningful for integrands spanning decades
    tol = rel_tol * max(abs(whole), np.finfo(float).tiny) * 0.1

    def recurse(a, b, fa, fm, fb, whole, tol, depth):
        m = 0.5 * (a + b)
        lm, rm = 0.5 * (a + m), 0.5 * (m + b)
        flm, frm = f(lm), f(rm)
        left = (m - a) / 6.0 * (fa + 4.0 * flm + fm)
        right = (b - m) / 6.0 * (fm + 4.0 * frm + fb)
        delta = left + right - whole
        if depth >= max_depth or abs(delta) <= 15.0 * tol:
            return left + right + delta / 15.0
        return recurse(a, m, fa, flm, fm, left, 0.5 * tol, depth + 1) + recurse(
            m, b, fm, frm, fb, right, 0.5 * tol, depth + 1
        )

    return recurse(a, b, fa, fm, fb, whole, tol, 0)


def conductivity_integral(material: MaterialModel, t_lo: float, t_hi: float) -> float:
    """Integral of k(T) dT over [t_lo, t_hi], W/m.

    Raises ValueError for a reversed interval, non-positive temperatures,
    or an upper bound above the fit. Below the fit's minimum k is held at
    its edge value and a warning is logged.
    """
    if t_lo > t_hi:
        raise ValueError(f"t_lo ({t_lo} K) must not exceed t_hi ({t_hi} K)")
    if t_lo <= 0:
        raise ValueError(f"t_lo must be > 0 K, got {t_lo}")
    t_min, t_max = material.valid_range
    if t_hi > t_max:
        raise ValueError(f"{material.name}: t_hi = {t_hi} K exceeds fit range up to {t_max} K")
    if t_lo == t_hi:
        return 0.0
    total = 0.0
    if t_lo < t_min:
        logger.warning(
            "%s: clamping conductivity below %g K (requested %g K)", material.name, t_min, t_lo
        )
        edge = min(t_min, t_hi)
        total += material.conductivity(t_min) * (edge - t_lo)
        t_lo = edge
    # integrate piece by piece so fit kinks never sit inside a panel
    cuts = [t_lo] + [b for b in material.breakpoints if t_lo < b < t_hi] + [t_hi]
    for a, b in zip(cuts, cuts[1:]):
        total += adaptive_simpson(material.conductivity, a, b, rel_tol=1e-8)
    return total


@dataclass(frozen=True)
class CableGeometry:
    """Conductor/dielectric cross-sections (m^2) and length (m) of a cable."""

    outer_area: float
    dielectric_area: float
    center_area: float
    outer_material: MaterialModel | None
    dielectric_material: MaterialModel | None
    center_material: MaterialModel | None
    length: float = 1.0
    name: str = ""

    def __post_init__(self) -> None:
        areas = (self.outer_area, self.dielectric_area, self.center_area)
        if any(a < 0 for a in areas) or not any(a > 0 for a in areas):
            raise ValueError("areas must be >= 0 with at least one positive")
        if not self.length > 0:
            raise ValueError("length must be positive")
        for area, mat in zip(areas, self._materials()):
            if area > 0 and mat is None:
                raise ValueError("every non-empty layer needs a material")

    def _materials(self):
        return (self.outer_material, self.dielectric_material, self.center_material)

    def layers(self) -> list[tuple[float, MaterialModel]]:
        areas = (self.outer_area, self.dielectric_area, self.center_area)
        return [(a, m) for a, m in zip(areas, self._materials()) if a > 0]


def passive_heat_load(cable: CableGeometry, t_lo: float, t_hi: float) -> float:
    """Conducted heat (W) arriving at the cold plate at ``t_lo``."""
    flux = sum(area * conductivity_integral(mat, t_lo, t_hi) for area, mat in cable.layers())
    return flux / cable.length


def coax(
    materials: dict[str, MaterialModel],
    outer_diameter: float = 2.20e-3,
    outer_wall: float = 0.20e-3,
    center_diameter: float = 0.51e-3,
    length: float = 1.0,
    conductor: str = "stainless_steel_304",
    dielectric: str = "ptfe",
    name: str = "coax",
) -> CableGeometry:
    """Semi-rigid coax; defaults approximate a UT-085 SS/SS cable."""
    r_out = outer_diameter / 2.0
    r_in = r_out - outer_wall
    r_c = center_diameter / 2.0
    if not 0 < r_c < r_in < r_out:
        raise ValueError("coax radii must satisfy center < dielectric < outer")
    return CableGeometry(
        outer_area=math.pi * (r_out**2 - r_in**2),
        dielectric_area=math.pi * (r_in**2 - r_c**2),
        center_area=math.pi * r_c**2,
        outer_material=materials[conductor],
        dielectric_material=materials[dielectric],
        center_material=materials[conductor],
        length=length,
        name=name,
    )


def optical_fiber(
    materials: dict[str, MaterialModel],
    cladding_diameter: float = 127e-6,
    length: float = 1.0,
    material: str = "fused_silica",
    name: str = "fiber",
) -> CableGeometry:
    """Bare glass fiber. Core and cladding are both silica, so only the
    cladding diameter enters."""
    area = math.pi * (cladding_diameter / 2.0) ** 2
    return CableGeometry(0.0, area, 0.0, None, materials[material], None, length, name)


def dielectric_waveguide(
    materials: dict[str, MaterialModel],
    width: float = 1e-3,
    height: float = 1e-3,
    length: float = 1.0,
    material: str = "ptfe",
    name: str = "dielectric_waveguide",
) -> CableGeometry:
    return CableGeometry(0.0, width * height, 0.0, None, materials[material], None, length, name)


@dataclass(frozen=True)
class Stage:
    name: str
    temperature: float  # K
    cooling_budget: float  # W
    attenuation_to_next: float = 0.0  # dB, toward the colder neighbour


@dataclass(frozen=True)
class StageChain:
    """Cryostat plates ordered from the warmest down to the qubit stage."""

    stages: tuple[Stage, ...] = field(default_factory=tuple)

    def __post_init__(self) -> None:
        temps = [s.temperature for s in self.stages]
        if any(t1 >= t0 for t0, t1 in zip(temps, temps[1:])):
            raise ValueError("stage temperatures must strictly decrease")
        if any(not s.cooling_budget > 0 for s in self.stages):
            raise ValueError("cooling budgets must be positive")
        if any(s.attenuation_to_next < 0 for s in self.stages):
            raise ValueError("attenuation must be >= 0 dB")

    def __getitem__(self, name: str) -> Stage:
        return self.stages[self.index(name)]

    def index(self, name: str) -> int:
        for i, s in enumerate(self.stages):
            if s.name == name:
                return i
        raise KeyError(f"unknown stage {name!r}")

    @property
    def qubit_stage(self) -> Stage:
        return self.stages[-1]

    def attenuation_between(self, upper: str, lower: str | None = None) -> float:
        """Attenuation (dB) from stage ``upper`` down to ``lower``, which
        defaults to the qubit stage."""
        i = self.index(upper)
        j = self.index(lower) if lower is not None else len(self.stages) - 1
        if j < i:
            raise ValueError(f"{lower!r} is warmer than {upper!r}")
        return sum(s.attenuation_to_next for s in self.stages[i:j])


DEFAULT_STAGES = StageChain(
    (
        Stage("300K", 300.0, math.inf),
        Stage("50K", 50.0, 30.0),
        Stage("4K", 4.0, 1.5, 20.0),
        Stage("882mK", 0.882, 0.03, 10.0),
        Stage("30mK", 0.030, 20e-6),
    )
)
