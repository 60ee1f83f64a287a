import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from cryolink.units import (
    CONSTANTS,
    HALF_POWER_DB,
    PulseProfile,
    dbm_to_watts,
    loss_efficiency,
    peak_to_average,
    responsivity_limit,
    thermal_noise_floor,
    watts_to_dbm,
)


@pytest.mark.parametrize("dbm, watts", [(0.0, 1e-3), (-80.0, 1e-11), (-50.0, 1e-8)])
def test_dbm_to_watts(dbm, watts):
    assert dbm_to_watts(dbm) == pytest.approx(watts, rel=1e-15)


@pytest.mark.parametrize("bad", [math.inf, -math.inf, math.nan])
def test_dbm_to_watts_rejects_non_finite(bad):
    with pytest.raises(ValueError):
        dbm_to_watts(bad)


@given(st.floats(min_value=-120, max_value=30))
def test_dbm_round_trip(p):
    back = watts_to_dbm(dbm_to_watts(p))
    assert dbm_to_watts(back) == pytest.approx(dbm_to_watts(p), rel=1e-12)


def test_noise_floor_at_qubit_temperature():
    assert thermal_noise_floor(0.030) == pytest.approx(-214.0, abs=0.5)
    assert thermal_noise_floor(0.030) == pytest.approx(-213.828, abs=1e-3)


@pytest.mark.parametrize("t, floor", [(0.300, -203.82795462602104), (300.0, -173.82795462602104)])
def test_noise_floor_values(t, floor):
    assert thermal_noise_floor(t) == pytest.approx(floor, abs=1e-9)


def test_room_temperature_floor_matches_textbook():
    assert thermal_noise_floor(300.0) == pytest.approx(-174.0, abs=0.2)


@pytest.mark.parametrize("t", [0.0, -1.0])
def test_noise_floor_domain(t):
    with pytest.raises(ValueError):
        thermal_noise_floor(t)


@given(st.floats(min_value=1e-3, max_value=1e3), st.floats(min_value=1.001, max_value=10))
def test_noise_floor_increasing(t, factor):
    assert thermal_noise_floor(t * factor) > thermal_noise_floor(t)


def test_peak_to_average_default_profile():
    assert peak_to_average(-70.0) == -80.0
    assert peak_to_average(-60.0) == -70.0


def test_identity_profile():
    assert peak_to_average(-42.5, PulseProfile(peak_to_avg_db=0.0)) == -42.5


@given(st.floats(-150, 30), st.floats(-50, 50))
def test_peak_to_average_commutes_with_offsets(p, d):
    assert peak_to_average(p + d) == pytest.approx(peak_to_average(p) + d, abs=1e-9)


@pytest.mark.parametrize("kw", [{"activity": 0.0}, {"activity": 1.5}, {"peak_to_avg_db": -1.0}])
def test_profile_validation(kw):
    with pytest.raises(ValueError):
        PulseProfile(**kw)


def test_profile_shape_from_string():
    assert PulseProfile("raised_cosine").shape.value == "raised_cosine"


def test_half_power_loss_is_exact_factor_two():
    assert loss_efficiency(HALF_POWER_DB) == pytest.approx(0.5, rel=1e-15)


def test_responsivity_quantum_limit_at_1550():
    assert responsivity_limit(1550e-9) == pytest.approx(1.25, abs=0.01)


def test_constants_positive():
    assert all(v > 0 for v in (CONSTANTS.q, CONSTANTS.k_B, CONSTANTS.hbar, CONSTANTS.c))
