"""FM synthesis in the time domain, plus harmonic analysis of samples.

The voice is sin(2*pi*fc*t + I*sin(2*pi*fm*t)).  Rendering a sweep of
modulation indices keeps carrier and modulator phase continuous across
segment boundaries by evaluating every segment on the shared global
time axis; with fixed fc and fm that is exactly the accumulated phase,
so the only discontinuity a boundary can introduce is the index step
itself, and that stays inaudible for small steps.

Analysis inverts synthesis for periodic signals: project onto sine and
cosine at integer multiples of a known fundamental over a window holding
a whole number of periods.  The window length is chosen so the sampled
sinusoids are as close to discretely orthogonal as the rate allows,
which keeps leakage between harmonics near float precision whenever
rate/fundamental is rational with a modest denominator.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .bessel import DEFAULT_TAIL_TOLERANCE, energy_order
from .spectrum import LineSpectrum, SpectralLine

__all__ = [
    "AMPLITUDE_FLOOR",
    "MAX_RENDER_SAMPLES",
    "FMParams",
    "SampledWave",
    "fm_sample",
    "render_fm_wave",
    "render_fm_path",
    "analyze_harmonics",
]

AMPLITUDE_FLOOR = 1e-6
MAX_RENDER_SAMPLES = 100_000_000
_MIN_ANALYSIS_PERIODS = 10
_TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class FMParams:
    carrier_hz: float
    modulator_hz: float
    modulation_index: float

    def __post_init__(self) -> None:
        if not (math.isfinite(self.carrier_hz) and self.carrier_hz > 0.0):
            raise ValueError(f"carrier must be positive, got {self.carrier_hz!r}")
        if not (math.isfinite(self.modulator_hz) and self.modulator_hz > 0.0):
            raise ValueError(f"modulator must be positive, got {self.modulator_hz!r}")
        if not (math.isfinite(self.modulation_index) and self.modulation_index >= 0.0):
            raise ValueError(
                f"modulation index must be >= 0, got {self.modulation_index!r}"
            )


@dataclass(frozen=True, eq=False)
class SampledWave:
    """Uniform samples at a fixed rate; amplitudes nominally in [-1, 1]."""

    sample_rate: int
    samples: np.ndarray

    def __post_init__(self) -> None:
        if int(self.sample_rate) != self.sample_rate or self.sample_rate < 1:
            raise ValueError(f"sample rate must be a positive integer, got {self.sample_rate!r}")
        arr = np.asarray(self.samples, dtype=np.float64)
        if arr.ndim != 1:
            raise ValueError(f"samples must be one dimensional, got shape {arr.shape}")
        if arr.size and not np.all(np.isfinite(arr)):
            raise ValueError("samples must be finite")
        object.__setattr__(self, "samples", arr)

    @property
    def duration_sec(self) -> float:
        return len(self.samples) / self.sample_rate


def fm_sample(params: FMParams, t: float | np.ndarray) -> float | np.ndarray:
    """Instantaneous value sin(2*pi*fc*t + I*sin(2*pi*fm*t)) at time t >= 0."""
    times = np.asarray(t, dtype=np.float64)
    if np.any(times < 0.0):
        raise ValueError("time must be nonnegative")
    value = np.sin(
        _TWO_PI * params.carrier_hz * times
        + params.modulation_index * np.sin(_TWO_PI * params.modulator_hz * times)
    )
    if np.isscalar(t) or getattr(t, "ndim", 0) == 0:
        return float(value)
    return value


def _validate_rate(sample_rate: int) -> int:
    if int(sample_rate) != sample_rate or sample_rate < 1:
        raise ValueError(f"sample rate must be a positive integer, got {sample_rate!r}")
    return int(sample_rate)


def _check_size(total_samples: int) -> None:
    if total_samples < 1:
        raise ValueError("render would produce no samples")
    if total_samples > MAX_RENDER_SAMPLES:
        raise ValueError(
            f"size guard: {total_samples} samples exceeds cap {MAX_RENDER_SAMPLES}"
        )


def render_fm_wave(
    params: FMParams, duration_sec: float, sample_rate: int
) -> SampledWave:
    """Render a single FM voice at fixed parameters.

    The aliasing guard requires the highest energy-significant sideband,
    carrier + N*modulator with N from the energy tail bound at the given
    index, to sit below the Nyquist frequency.
    """
    rate = _validate_rate(sample_rate)
    if not (math.isfinite(duration_sec) and duration_sec > 0.0):
        raise ValueError(f"duration must be positive, got {duration_sec!r}")
    count = int(round(duration_sec * rate))
    _check_size(count)
    n_side = energy_order(params.modulation_index, DEFAULT_TAIL_TOLERANCE)
    top = params.carrier_hz + n_side * params.modulator_hz
    if top >= rate / 2.0:
        raise ValueError(
            f"aliasing guard: sideband at {top} Hz (order {n_side}) reaches "
            f"Nyquist {rate / 2.0} Hz"
        )
    t = np.arange(count, dtype=np.float64) / rate
    samples = np.sin(
        _TWO_PI * params.carrier_hz * t
        + params.modulation_index * np.sin(_TWO_PI * params.modulator_hz * t)
    )
    peak = float(np.max(np.abs(samples))) if count else 0.0
    if peak > 1.0:
        samples = samples / peak
    return SampledWave(sample_rate=rate, samples=samples)


def render_fm_path(
    carrier_hz: float,
    modulator_hz: float,
    index_grid: list[float] | np.ndarray,
    segment_duration_sec: float,
    sample_rate: int,
) -> SampledWave:
    """Render one segment per modulation index, phase continuous throughout.

    Each segment covers its half-open time slice on the global clock, so
    carrier and modulator phases accumulate exactly across boundaries.
    High indices are rendered as given even when their faintest sidebands
    pass Nyquist; the energy-significant content of the sweep range stays
    in band at ordinary rates and the sweep is the product being studied.
    """
    rate = _validate_rate(sample_rate)
    fc = float(carrier_hz)
    fm = float(modulator_hz)
    if not (math.isfinite(fc) and 0.0 < fc < rate / 2.0):
        raise ValueError(f"carrier must lie in (0, Nyquist), got {carrier_hz!r}")
    if not (math.isfinite(fm) and 0.0 < fm < rate / 2.0):
        raise ValueError(f"modulator must lie in (0, Nyquist), got {modulator_hz!r}")
    grid = [float(i) for i in index_grid]
    if not grid:
        raise ValueError("index grid must be nonempty")
    for a, b in zip(grid, grid[1:]):
        if not b > a:
            raise ValueError(f"index grid must ascend, got {a} then {b}")
    if grid[0] < 0.0:
        raise ValueError(f"modulation indices must be >= 0, got {grid[0]}")
    if not (math.isfinite(segment_duration_sec) and segment_duration_sec > 0.0):
        raise ValueError(
            f"segment duration must be positive, got {segment_duration_sec!r}"
        )
    seg = int(round(segment_duration_sec * rate))
    if seg < 1:
        raise ValueError("segment duration shorter than one sample")
    _check_size(seg * len(grid))

    out = np.empty(seg * len(grid), dtype=np.float64)
    for j, index in enumerate(grid):
        t = np.arange(j * seg, (j + 1) * seg, dtype=np.float64) / rate
        out[j * seg : (j + 1) * seg] = np.sin(
            _TWO_PI * fc * t + index * np.sin(_TWO_PI * fm * t)
        )
    return SampledWave(sample_rate=rate, samples=out)


def _analysis_window(sample_count: int, fundamental_hz: float, rate: int) -> int:
    # Largest whole number of periods that fits, preferring a period count
    # whose span in samples is closest to integral: that restores discrete
    # orthogonality of the projection basis whenever the rate and the
    # fundamental are commensurable.
    periods_max = int(math.floor(sample_count * fundamental_hz / rate))
    if periods_max < _MIN_ANALYSIS_PERIODS:
        raise ValueError(
            f"wave too short: covers {periods_max} fundamental periods, "
            f"need at least {_MIN_ANALYSIS_PERIODS}"
        )
    best_length = None
    best_mismatch = math.inf
    lowest = max(_MIN_ANALYSIS_PERIODS, periods_max - 400)
    for periods in range(periods_max, lowest - 1, -1):
        span = periods * rate / fundamental_hz
        length = int(round(span))
        if length > sample_count:
            continue
        mismatch = abs(span - length)
        if mismatch < best_mismatch:
            best_mismatch = mismatch
            best_length = length
            if mismatch < 1e-6:
                break
    assert best_length is not None
    return best_length


def analyze_harmonics(
    wave: SampledWave, fundamental_hz: float, max_harmonic: int
) -> LineSpectrum:
    """Project a wave onto harmonics n*fundamental, n = 1..max_harmonic.

    Returns a line spectrum in the form a0 + sum a_n sin(2 pi n f t + phi_n)
    with nonnegative amplitudes, phases in [0, 2*pi), and lines below the
    amplitude floor suppressed; a0 (the window mean) lands in dc_term.
    """
    f0 = float(fundamental_hz)
    rate = wave.sample_rate
    if not (math.isfinite(f0) and f0 > 0.0):
        raise ValueError(f"fundamental must be positive, got {fundamental_hz!r}")
    if f0 >= rate / 2.0:
        raise ValueError(
            f"fundamental {f0} Hz is at or above Nyquist {rate / 2.0} Hz"
        )
    if int(max_harmonic) != max_harmonic or max_harmonic < 1:
        raise ValueError(f"max harmonic must be a positive integer, got {max_harmonic!r}")
    max_harmonic = int(max_harmonic)
    if max_harmonic * f0 >= rate / 2.0:
        raise ValueError(
            f"harmonic {max_harmonic} at {max_harmonic * f0} Hz reaches "
            f"Nyquist {rate / 2.0} Hz; lower max_harmonic or raise the rate"
        )
    length = _analysis_window(len(wave.samples), f0, rate)
    window = wave.samples[:length]
    t = np.arange(length, dtype=np.float64) / rate
    dc = float(np.mean(window))
    lines = []
    for n in range(1, max_harmonic + 1):
        angle = _TWO_PI * n * f0 * t
        in_phase = 2.0 * float(window @ np.sin(angle)) / length
        quadrature = 2.0 * float(window @ np.cos(angle)) / length
        amplitude = math.hypot(in_phase, quadrature)
        if amplitude < AMPLITUDE_FLOOR:
            continue
        phase = math.atan2(quadrature, in_phase) % _TWO_PI
        if phase > _TWO_PI - 1e-6:  # tiny negative angles wrap to just below 2*pi
            phase = 0.0
        lines.append(
            SpectralLine(frequency=n * f0, amplitude=amplitude, phase=phase)
        )
    return LineSpectrum(lines=tuple(lines), dc_term=dc)
