"""Two-tone intermodulation of a quadrature-biased Mach-Zehnder modulator.

With two equal tones of modulation depth eps the detected waveform is

    sin(eps sin w1 t + eps sin w2 t)
        = sum_{n,m} J_n(eps) J_m(eps) sin(n w1 t + m w2 t),

so each (n, m) product carries amplitude J_n J_m and only odd n + m
survive. The fundamental sits at (1, 0), IM3 at (2, -1) and IM5 at (3, -2).
"""

from __future__ import annotations

import math
from collections.abc import Iterator
from dataclasses import dataclass

import numpy as np

from cryolink.units import watts_to_dbm

_SERIES_MAX_X = 1.0


def besselJ(n: int, x: float) -> float:
    """Bessel function of the first kind J_n(x) for integer order.

    Ascending series for |x| < 1, Miller's downward recurrence otherwise.
    Negative orders and arguments use J_{-n} = (-1)^n J_n and
    J_n(-x) = (-1)^n J_n(x).
    """
    n = int(n)
    sign = 1.0
    if n < 0:
        n = -n
        sign *= -1.0 if n % 2 else 1.0
    if x < 0:
        x = -x
        sign *= -1.0 if n % 2 else 1.0
    if x == 0.0:
        return sign if n == 0 else 0.0
    if x < _SERIES_MAX_X:
        return sign * _series(n, x)
    return sign * _miller(n, x)


def _series(n: int, x: float) -> float:
    half = 0.5 * x
    term = half**n / math.factorial(n)
    total = term
    q = -half * half
    k = 0
    while abs(term) > 1e-18 * abs(total):
        k += 1
        term *= q / (k * (n + k))
        total += term
    return total


def _miller(n: int, x: float) -> float:
    # start well above both n and x so the seed error decays away
    start = 2 * ((max(n, int(x)) + 20 + int(math.sqrt(40.0 * max(n, x)))) // 2)
    j_next, j = 0.0, 1e-30
    result = 0.0
    norm = 0.0
    for k in range(start, 0, -1):
        j_prev = 2.0 * k / x * j - j_next
        j_next, j = j, j_prev
        # j now holds the unnormalised J_{k-1}
        if abs(j) > 1e250:
            j *= 1e-250
            j_next *= 1e-250
            result *= 1e-250
            norm *= 1e-250
        if k - 1 == n:
            result = j
        if (k - 1) % 2 == 0 and k - 1 > 0:
            norm += 2.0 * j
    norm += j  # J_0 term
    return result / norm


@dataclass(frozen=True)
class Tone:
    n: int
    m: int
    amplitude: float

    @property
    def order(self) -> int:
        return abs(self.n) + abs(self.m)

    @property
    def label(self) -> str:
        parts = []
        for k, name in ((self.n, "f1"), (self.m, "f2")):
            if k == 0:
                continue
            coef = "" if abs(k) == 1 else str(abs(k))
            sign = "-" if k < 0 else ("+" if parts else "")
            parts.append(f"{sign}{coef}{name}")
        return "".join(parts) or "dc"

    def frequency(self, f1: float, f2: float) -> float:
        return self.n * f1 + self.m * f2


@dataclass(frozen=True)
class ToneSpectrum:
    eps: float
    tones: tuple[Tone, ...]

    def __iter__(self) -> Iterator[Tone]:
        return iter(self.tones)

    def __len__(self) -> int:
        return len(self.tones)

    def amplitude(self, n: int, m: int) -> float:
        for t in self.tones:
            if (t.n, t.m) == (n, m):
                return t.amplitude
        return 0.0


def two_tone_spectrum(eps: float, max_order: int = 7) -> ToneSpectrum:
    """All (n, m) products with |n| + |m| <= max_order and odd n + m."""
    if not 0 < eps <= 1:
        raise ValueError(f"eps must lie in (0, 1], got {eps}")
    if max_order < 3:
        raise ValueError("max_order must be >= 3")
    j = {k: besselJ(k, eps) for k in range(-max_order, max_order + 1)}
    tones = []
    for n in range(-max_order, max_order + 1):
        for m in range(-(max_order - abs(n)), max_order - abs(n) + 1):
            if (n + m) % 2:
                tones.append(Tone(n, m, j[n] * j[m]))
    return ToneSpectrum(eps, tuple(tones))


def waveform_fft_oracle(
    eps: float,
    f1: float,
    f2: float,
    n_samples: int = 8192,
    sample_rate: float = 8192.0,
    max_order: int = 7,
) -> ToneSpectrum:
    """Tone amplitudes read off the DFT of the sampled two-tone waveform.

    Both tones must fall exactly on FFT bins (no window is applied). Every
    (n, m) up to ``max_order`` is reported, even-order ones included, so
    the caller can also check that those vanish.
    """
    if f1 == f2:
        raise ValueError("tones must differ")
    if n_samples < 2 or n_samples & (n_samples - 1):
        raise ValueError("n_samples must be a power of two")
    k1, k2 = f1 * n_samples / sample_rate, f2 * n_samples / sample_rate
    for k, f in ((k1, f1), (k2, f2)):
        if abs(k - round(k)) > 1e-9 or round(k) <= 0:
            raise ValueError(f"tone {f} Hz is not on an FFT bin")
    k1, k2 = int(round(k1)), int(round(k2))
    if max_order * max(k1, k2) >= n_samples // 2:
        raise ValueError("sample rate too low for the requested order")

    t = np.arange(n_samples) / sample_rate
    x = np.sin(eps * np.sin(2 * np.pi * f1 * t) + eps * np.sin(2 * np.pi * f2 * t))
    spectrum = np.fft.rfft(x) / n_samples
    tones = []
    for n in range(-max_order, max_order + 1):
        for m in range(-(max_order - abs(n)), max_order - abs(n) + 1):
            k = n * k1 + m * k2
            if k == 0:
                continue
            # sin(w t) shows up as -i/2 at +w
            amp = -spectrum[k].imag if k > 0 else spectrum[-k].imag
            tones.append(Tone(n, m, float(amp)))
    return ToneSpectrum(eps, tuple(tones))


@dataclass(frozen=True)
class DistortionReport:
    epsilon_m: float
    p_fund: float  # W
    p_im3: float
    p_im5: float

    @property
    def dynamic_range_db(self) -> float:
        return 10.0 * math.log10(self.p_fund / self.p_im3)

    @property
    def popt_scale(self) -> float:
        return popt_scale_for_eps(self.epsilon_m)


def rf_powers(eps: float, responsivity: float, p_opt: float, z_load: float) -> DistortionReport:
    """Detected RF power of the fundamental, IM3 and IM5 products."""
    if min(eps, responsivity, p_opt, z_load) <= 0:
        raise ValueError("all arguments must be positive")
    j0, j1, j2, j3 = (besselJ(k, eps) for k in range(4))
    i0 = responsivity * p_opt

    def power(a):
        return 0.5 * (a * i0) ** 2 * z_load

    return DistortionReport(eps, power(j1 * j0), power(j2 * j1), power(j3 * j2))


def dynamic_range_db(eps: float) -> float:
    """Fundamental-to-IM3 power ratio (dB); depends on eps alone."""
    return 20.0 * math.log10(abs(besselJ(0, eps) / besselJ(2, eps)))


def solve_epsilon_for_dr(target_db: float, tol: float = 1e-10) -> float:
    """Largest modulation depth whose dynamic range still meets the target."""
    if not 20.0 <= target_db <= 120.0:
        raise ValueError(f"target dynamic range must lie in [20, 120] dB, got {target_db}")
    lo, hi = 1e-6, 1.0
    if dynamic_range_db(hi) >= target_db:
        return hi
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if dynamic_range_db(mid) >= target_db:
            lo = mid
        else:
            hi = mid
    return lo


def popt_scale_for_eps(eps: float) -> float:
    """Optical-power penalty of running below full modulation depth:
    SNR goes as eps * sqrt(P_opt)."""
    if not 0 < eps <= 1:
        raise ValueError(f"eps must lie in (0, 1], got {eps}")
    return 1.0 / eps**2


def distortion_table(
    eps_grid, responsivity: float = 0.1, p_opt: float = 100e-6, z_load: float = 200.0
) -> list[tuple[float, float, float, float]]:
    """(eps, fundamental, IM3, IM5) in dBm over ``eps_grid``."""
    rows = []
    for eps in eps_grid:
        r = rf_powers(float(eps), responsivity, p_opt, z_load)
        rows.append((float(eps), watts_to_dbm(r.p_fund), watts_to_dbm(r.p_im3), watts_to_dbm(r.p_im5)))
    return rows
