import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from cryolink.noise import (
    NoiseBreakdown,
    NoiseSource,
    TxNoiseConfig,
    eom_thermal_psd,
    filter_rejection_ok,
    in_band_snr,
    link_snr,
    optical_noise,
    phase_noise_psd,
    required_snr,
    rin_psd,
    shot_psd,
)


def test_shot_psd():
    assert shot_psd(0.0) == 0.0
    assert shot_psd(1e-5) == pytest.approx(3.204353268e-24, rel=1e-12)
    assert shot_psd(2e-5) == pytest.approx(2 * shot_psd(1e-5), rel=1e-15)
    with pytest.raises(ValueError):
        shot_psd(-1e-6)


def test_rin_psd():
    assert rin_psd(-150, 1e-5) == pytest.approx(1e-25, rel=1e-12)
    assert rin_psd(-150, 0.0) == 0.0
    assert rin_psd(-140, 3e-4) == pytest.approx(10 * rin_psd(-150, 3e-4), rel=1e-12)


def test_eom_thermal_psd():
    cfg = TxNoiseConfig()
    assert eom_thermal_psd(cfg, 1e-5) == pytest.approx(2.0439689170139436e-28, rel=1e-12)
    assert eom_thermal_psd(cfg, 0.0) == 0.0
    assert eom_thermal_psd(cfg, 4e-5) == pytest.approx(16 * eom_thermal_psd(cfg, 1e-5), rel=1e-12)


def test_phase_noise_psd():
    assert phase_noise_psd(-120, 1e-5) == pytest.approx(1e-34, rel=1e-12)
    assert phase_noise_psd(-120, 0.0) == 0.0
    assert phase_noise_psd(-114, 1e-5) == pytest.approx(4 * phase_noise_psd(-120, 1e-5), rel=0.01)


@pytest.mark.parametrize(
    "p_avg, t, expected",
    [(-80.0, 0.030, 133.82795462602104), (-90.0, 0.030, 123.82795462602104), (-80.0, 0.300, 123.82795462602104)],
)
def test_required_snr(p_avg, t, expected):
    assert required_snr(p_avg, t) == pytest.approx(expected, abs=1e-9)


def test_required_snr_near_published_value():
    assert required_snr(-80.0, 0.030) == pytest.approx(134.0, abs=0.5)


def test_link_snr_shot_only():
    nb = NoiseBreakdown(shot=shot_psd(1e-5))
    assert link_snr(1e-5, nb) == pytest.approx(20 * math.log10(1e-5 / math.sqrt(3.204353268e-24)), abs=1e-9)
    assert link_snr(1e-4, nb) == pytest.approx(link_snr(1e-5, nb) + 20.0, abs=1e-12)


def test_link_snr_sentinels():
    assert link_snr(0.0, NoiseBreakdown(shot=1e-24)) == -math.inf
    assert link_snr(1e-6, NoiseBreakdown()) == math.inf


@given(st.floats(1e-9, 1e-1))
def test_breakdown_total_and_argmax(i_dc):
    nb = optical_noise(i_dc, TxNoiseConfig())
    parts = [nb.shot, nb.rin, nb.eom_thermal, nb.phase_noise]
    assert nb.total == pytest.approx(math.fsum(parts), rel=1e-12)
    assert getattr(nb, nb.limiting_source.value) == max(parts)


def test_single_shot_to_rin_transition():
    currents = np.geomspace(1e-9, 1.0, 400)
    sources = [optical_noise(i, TxNoiseConfig()).limiting_source for i in currents]
    changes = [(a, b) for a, b in zip(sources, sources[1:]) if a != b]
    assert changes == [(NoiseSource.SHOT, NoiseSource.RIN)]


def test_snr_slopes_with_popt():
    # eps = 1: I_DC = I_sig = R P; shot-limited -> +10 dB/decade, RIN-limited -> flat
    tx = TxNoiseConfig()
    r = 0.1

    def snr(p, noise):
        return link_snr(r * p, noise(r * p))

    low = np.geomspace(1e-12, 1e-6, 7)
    s = [snr(p, lambda i: NoiseBreakdown(shot=shot_psd(i))) for p in low]
    assert np.polyfit(np.log10(low), s, 1)[0] == pytest.approx(10.0, abs=1e-9)
    high = np.geomspace(1e0, 1e6, 7)
    s = [snr(p, lambda i: NoiseBreakdown(rin=rin_psd(tx.rin_db, i))) for p in high]
    assert np.polyfit(np.log10(high), s, 1)[0] == pytest.approx(0.0, abs=1e-9)


def test_tx_config_validation():
    with pytest.raises(ValueError):
        TxNoiseConfig(rin_db=10.0)
    with pytest.raises(ValueError):
        TxNoiseConfig(v_pi=0.0)


def test_wdm_filter_rejection_requirement():
    # -80 dBm at the qubit: 133.8 dB/Hz over 100 MHz
    assert in_band_snr(required_snr(-80, 0.030), 100e6) == pytest.approx(54.0, abs=0.5)
    assert filter_rejection_ok(60.0)
    assert not filter_rejection_ok(50.0)
