import pytest

from cryolink.config import ConfigError, Settings, UnknownKeyError


def test_defaults_build_models():
    s = Settings.load()
    assert s.t_qubit() == 0.030
    assert s.stages().attenuation_between("4K") == 30.0
    assert s.photonic_design(wdm=True).wdm_channels == 4
    assert s.subthz_design().responsivity == 1.0
    assert s.profile().peak_to_avg_db == 10.0


def test_override_and_unknown_key():
    s = Settings.load(overrides=["photonic.responsivity_a_per_w=0.8"])
    assert s.photonic_design().responsivity == 0.8
    with pytest.raises(UnknownKeyError) as info:
        Settings.load(overrides=["photonic.bogus=1"])
    assert str(info.value) == "unknown variable 'photonic.bogus'"


def test_malformed_override():
    with pytest.raises(ConfigError):
        Settings.load(overrides=["no_equals_sign"])


def test_config_file_unknown_key(tmp_path):
    path = tmp_path / "c.ini"
    path.write_text("[tx]\nrin_db_hz = -150\nsparkle = 1\n")
    with pytest.raises(UnknownKeyError):
        Settings.load(path)
