"""Flat INI configuration: packaged defaults, an optional user file, and
``section.key=value`` overrides.

Only keys present in the defaults are accepted, so a typo surfaces as an
error instead of a silently ignored setting.
"""

from __future__ import annotations

import configparser
from importlib import resources
from pathlib import Path

from cryolink import photonic, subthz
from cryolink.noise import TxNoiseConfig
from cryolink.thermal import Stage, StageChain
from cryolink.units import PulseProfile


class ConfigError(Exception):
    """Malformed config file or value."""


class UnknownKeyError(KeyError):
    """A config key or sweep variable that the model does not define."""

    def __init__(self, key: str):
        super().__init__(key)
        self.key = key

    def __str__(self) -> str:
        return f"unknown variable {self.key!r}"


def _defaults_text() -> str:
    return resources.files("cryolink").joinpath("data/defaults.ini").read_text()


class Settings:
    def __init__(self) -> None:
        self._cp = configparser.ConfigParser(interpolation=None)
        self._cp.read_string(_defaults_text(), source="<defaults>")

    @classmethod
    def load(cls, path: str | Path | None = None, overrides: list[str] | None = None) -> "Settings":
        settings = cls()
        if path is not None:
            settings.read_file(path)
        for item in overrides or []:
            if "=" not in item:
                raise ConfigError(f"override {item!r} is not of the form section.key=value")
            key, value = item.split("=", 1)
            settings.set(key.strip(), value.strip())
        return settings

    def read_file(self, path: str | Path) -> None:
        user = configparser.ConfigParser(interpolation=None)
        try:
            with open(path, encoding="utf-8") as fh:
                user.read_file(fh)
        except configparser.MissingSectionHeaderError as exc:
            raise ConfigError(f"{path}:{exc.lineno}: line outside any [section]") from None
        except configparser.ParsingError as exc:
            lineno, line = exc.errors[0]
            raise ConfigError(f"{path}:{lineno}: cannot parse {line.strip()!r}") from None
        except (configparser.DuplicateOptionError, configparser.DuplicateSectionError) as exc:
            raise ConfigError(f"{path}:{exc.lineno}: {exc.message}") from None
        except OSError as exc:
            raise ConfigError(f"{path}: {exc.strerror}") from None
        for section in user.sections():
            for key, value in user[section].items():
                self.set(f"{section}.{key}", value)

    def keys(self) -> list[str]:
        return [f"{s}.{k}" for s in self._cp.sections() for k in self._cp[s]]

    def _split(self, dotted: str) -> tuple[str, str]:
        section, _, key = dotted.partition(".")
        if not key or not self._cp.has_option(section, key):
            raise UnknownKeyError(dotted)
        return section, key

    def set(self, dotted: str, value: str | float) -> None:
        section, key = self._split(dotted)
        self._cp[section][key] = str(value)

    def get(self, dotted: str) -> str:
        section, key = self._split(dotted)
        return self._cp[section][key]

    def float(self, dotted: str) -> float:
        raw = self.get(dotted)
        try:
            return float(raw)
        except ValueError:
            raise ConfigError(f"{dotted}: expected a number, got {raw!r}") from None

    def int(self, dotted: str) -> int:
        value = self.float(dotted)
        if value != int(value):
            raise ConfigError(f"{dotted}: expected an integer, got {value}")
        return int(value)

    def floats(self, dotted: str) -> list[float]:
        raw = self.get(dotted)
        try:
            return [float(tok) for tok in raw.split(",") if tok.strip()]
        except ValueError:
            raise ConfigError(f"{dotted}: expected a comma-separated list of numbers") from None

    def strings(self, dotted: str) -> list[str]:
        return [tok.strip() for tok in self.get(dotted).split(",") if tok.strip()]

    # model objects -------------------------------------------------------

    def profile(self) -> PulseProfile:
        return PulseProfile(
            self.get("qubit.pulse_shape"),
            self.float("qubit.activity"),
            self.float("qubit.peak_to_avg_db"),
        )

    def tx_noise(self) -> TxNoiseConfig:
        return TxNoiseConfig(
            rin_db=self.float("tx.rin_db_hz"),
            v_pi=self.float("tx.v_pi_v"),
            z_dr=self.float("tx.z_dr_ohm"),
            t_tx=self.float("tx.t_tx_k"),
            pn_dbc=self.float("subthz.pn_dbc_hz"),
        )

    def stages(self) -> StageChain:
        names = self.strings("stages.names")
        cols = [self.floats(f"stages.{k}") for k in ("temperatures_k", "cooling_w", "attenuation_db")]
        if any(len(c) != len(names) for c in cols):
            raise ConfigError("stages: all lists must have one entry per stage")
        try:
            return StageChain(tuple(Stage(n, t, b, a) for n, t, b, a in zip(names, *cols)))
        except ValueError as exc:
            raise ConfigError(f"stages: {exc}") from None

    def t_qubit(self) -> float:
        return self.float("qubit.t_qubit_k")

    def photonic_design(self, rx_stage: str | None = None, wdm: bool = False) -> photonic.PhotonicLinkDesign:
        rx_stage = rx_stage or self.get("photonic.rx_stage")
        try:
            attenuation = self.stages().attenuation_between(rx_stage)
        except KeyError:
            raise ConfigError(f"photonic.rx_stage: no stage named {rx_stage!r}") from None
        return photonic.PhotonicLinkDesign(
            responsivity=self.float("photonic.responsivity_a_per_w"),
            epsilon_m=self.float("photonic.epsilon_m"),
            rx_stage=rx_stage,
            attenuation_below_rx=attenuation,
            coupling_loss=self.float("photonic.coupling_loss_db"),
            wdm_filter_loss=self.float("photonic.wdm_filter_loss_db") if wdm else 0.0,
            wdm_channels=self.int("photonic.wdm_channels") if wdm else 1,
            filter_rejection=self.float("photonic.filter_rejection_db"),
            wavelength=self.float("photonic.wavelength_m"),
            tx_noise=self.tx_noise(),
            profile=self.profile(),
            snr_margin_db=self.float("qubit.snr_margin_db"),
        )

    def subthz_design(self) -> subthz.SubThzLinkDesign:
        return subthz.SubThzLinkDesign(
            responsivity=self.float("subthz.responsivity_a_per_w"),
            pn_dbc=self.float("subthz.pn_dbc_hz"),
            coupler_loss=self.float("subthz.coupler_loss_db"),
            waveguide_loss=self.float("subthz.waveguide_loss_db"),
            attenuation_below_rx=self.float("subthz.attenuation_db"),
            profile=self.profile(),
            snr_margin_db=self.float("qubit.snr_margin_db"),
        )
