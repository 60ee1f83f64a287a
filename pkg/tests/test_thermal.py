import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cryolink import thermal
from cryolink.thermal import (
    CableGeometry,
    MaterialModel,
    Stage,
    StageChain,
    conductivity_integral,
    constant_material,
    passive_heat_load,
)

PTFE_COEFFS = [2.7380, -30.677, 89.430, -136.99, 124.69, -69.556, 23.320, -4.3135, 0.33829]


@pytest.fixture(scope="module")
def materials():
    return thermal.load_materials()


def composite_simpson(f, a, b, n=10_000):
    x = np.linspace(a, b, n + 1)
    y = f(x)
    h = (b - a) / n
    return h / 3 * (y[0] + y[-1] + 4 * y[1:-1:2].sum() + 2 * y[2:-1:2].sum())


def test_defaults_load(materials):
    assert {"stainless_steel_304", "ptfe", "fused_silica"} <= set(materials)


def test_empty_interval(materials):
    assert conductivity_integral(materials["ptfe"], 10.0, 10.0) == 0.0


def test_constant_material_rectangle():
    assert conductivity_integral(constant_material("c", 2.0), 1.0, 3.0) == pytest.approx(4.0, rel=1e-12)


def test_ptfe_against_simpson_oracle(materials):
    def k(t):
        return 10 ** np.polynomial.polynomial.polyval(np.log10(t), PTFE_COEFFS)

    expected = composite_simpson(k, 4.0, 50.0)
    assert conductivity_integral(materials["ptfe"], 4.0, 50.0) == pytest.approx(expected, rel=1e-6)


@pytest.mark.parametrize("name", ["stainless_steel_304", "fused_silica"])
def test_other_fits_against_simpson_oracle(materials, name):
    m = materials[name]
    expected = composite_simpson(np.vectorize(m.conductivity), 4.0, 300.0)
    assert conductivity_integral(m, 4.0, 300.0) == pytest.approx(expected, rel=1e-6)


def test_out_of_range_names_bound(materials):
    with pytest.raises(ValueError, match="400"):
        conductivity_integral(materials["ptfe"], 4.0, 400.0)
    with pytest.raises(ValueError):
        conductivity_integral(materials["ptfe"], 50.0, 4.0)


def test_below_fit_clamps_with_warning(materials, caplog):
    m = materials["ptfe"]
    value = conductivity_integral(m, 2.0, 4.0)
    assert value == pytest.approx(2.0 * m.conductivity(4.0))
    assert "clamping" in caplog.text


def test_piecewise_fit_integrates_across_breakpoint():
    m = MaterialModel("two", (1.0, 10.0, 100.0), ((0.0,), (math.log10(1.005),)))
    assert conductivity_integral(m, 1.0, 100.0) == pytest.approx(9.0 + 90 * 1.005, rel=1e-9)


def test_discontinuous_fit_rejected():
    with pytest.raises(ValueError, match="discontinuous"):
        MaterialModel("bad", (1.0, 10.0, 100.0), ((0.0,), (0.1,)))


def test_materials_file_round_trip(tmp_path):
    path = tmp_path / "m.ini"
    path.write_text("[flat]\nbreakpoints = 1, 100\ncoefficients.0 = 0.30103\n")
    (flat,) = thermal.load_materials(path).values()
    assert flat.conductivity(42.0) == pytest.approx(2.0, rel=1e-5)


def _slab(k=2.0, area=1e-6, length=1.0):
    mat = constant_material("c", k)
    return CableGeometry(0.0, area, 0.0, None, mat, None, length)


def test_constant_rho_analytic():
    cable = _slab(k=2.0, area=3e-6, length=0.5)
    assert passive_heat_load(cable, 4.0, 50.0) == pytest.approx(2.0 * 3e-6 * 46.0 / 0.5, rel=1e-12)


def test_series_composition_constant_rho():
    # a rod split where T = 20 K carries the same heat through both parts when
    # the lengths follow the temperature drops
    k, area, total_len = 2.0, 1e-6, 1.0
    full = passive_heat_load(_slab(k, area, total_len), 4.0, 50.0)
    upper = passive_heat_load(_slab(k, area, total_len * 30 / 46), 20.0, 50.0)
    lower = passive_heat_load(_slab(k, area, total_len * 16 / 46), 4.0, 20.0)
    assert upper == pytest.approx(full, rel=1e-12)
    assert lower == pytest.approx(full, rel=1e-12)


@settings(max_examples=30, deadline=None)
@given(st.floats(1.01, 5.0))
def test_monotone_in_area_and_length(materials, factor):
    base = thermal.coax(materials)
    wider = thermal.coax(materials, outer_diameter=2.2e-3 * factor, outer_wall=0.2e-3 * factor)
    longer = thermal.coax(materials, length=factor)
    load = passive_heat_load(base, 4.0, 50.0)
    assert passive_heat_load(wider, 4.0, 50.0) > load
    assert passive_heat_load(longer, 4.0, 50.0) < load


def test_geometry_validation():
    with pytest.raises(ValueError):
        CableGeometry(0.0, 0.0, 0.0, None, None, None)
    with pytest.raises(ValueError):
        _slab(length=0.0)
    with pytest.raises(ValueError):
        CableGeometry(1e-6, 0.0, 0.0, None, None, None)


def test_teflon_waveguide_reference_loads(materials):
    wg = thermal.dielectric_waveguide(materials)
    assert passive_heat_load(wg, 50.0, 300.0) == pytest.approx(50e-6, rel=0.5)
    assert passive_heat_load(wg, 4.0, 50.0) == pytest.approx(9e-6, rel=0.5)


def test_stage_chain_attenuation():
    chain = thermal.DEFAULT_STAGES
    assert chain.attenuation_between("4K") == 30.0
    assert chain.attenuation_between("30mK") == 0.0
    assert chain.attenuation_between("4K", "882mK") == 20.0
    assert chain.qubit_stage.temperature == 0.030


def test_stage_chain_validation():
    with pytest.raises(ValueError):
        StageChain((Stage("a", 1.0, 1.0), Stage("b", 2.0, 1.0)))
    with pytest.raises(ValueError):
        StageChain((Stage("a", 2.0, 0.0),))
    with pytest.raises(KeyError):
        thermal.DEFAULT_STAGES.attenuation_between("77K")
