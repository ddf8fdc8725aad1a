"""Line spectra: FM sidebands and folding onto nonnegative frequencies.

An FM voice sin(w_c t + I sin(w_m t)) expands into the two-sided series
sum_n J_n(I) sin((w_c + n w_m) t).  Entries with negative frequency are
mathematically redundant: sin(-w t) = -sin(w t), so a line at -g with
amplitude a equals a line at g with amplitude -a.  Folding rewrites the
raw two-sided list into that canonical nonnegative form, merging lines
that collide and routing frequency zero into a DC bookkeeping slot.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .bessel import DEFAULT_TAIL_TOLERANCE, bessel_row

__all__ = [
    "MERGE_TOLERANCE_HZ",
    "SpectralLine",
    "LineSpectrum",
    "fm_sidebands",
    "fold_spectrum",
    "synthesize",
]

MERGE_TOLERANCE_HZ = 1e-9
_TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class SpectralLine:
    """One sinusoidal component: amplitude * sin(2*pi*frequency*t + phase)."""

    frequency: float
    amplitude: float
    phase: float = 0.0

    def __post_init__(self) -> None:
        if not math.isfinite(self.frequency) or self.frequency < 0.0:
            raise ValueError(
                f"line frequency must be finite and >= 0, got {self.frequency!r}"
            )
        if not math.isfinite(self.amplitude):
            raise ValueError(f"line amplitude must be finite, got {self.amplitude!r}")
        if not (0.0 <= self.phase < _TWO_PI):
            raise ValueError(
                f"line phase must lie in [0, 2*pi), got {self.phase!r}"
            )


@dataclass(frozen=True)
class LineSpectrum:
    """Folded spectrum: lines at strictly increasing positive frequencies.

    dc_term records any amplitude that folded onto frequency zero.  In the
    sine convention that component contributes nothing to the waveform,
    but analysis (where it is the signal mean) and resynthesis need it.
    """

    lines: tuple[SpectralLine, ...]
    dc_term: float = 0.0

    def __post_init__(self) -> None:
        freqs = [line.frequency for line in self.lines]
        for a, b in zip(freqs, freqs[1:]):
            if not b > a:
                raise ValueError(
                    f"line frequencies must be strictly increasing, got {a} then {b}"
                )
        if freqs and freqs[0] <= 0.0:
            raise ValueError("folded lines must have positive frequency")
        if not math.isfinite(self.dc_term):
            raise ValueError(f"dc term must be finite, got {self.dc_term!r}")

    def frequencies(self) -> np.ndarray:
        return np.array([line.frequency for line in self.lines], dtype=np.float64)

    def amplitudes(self) -> np.ndarray:
        return np.array([line.amplitude for line in self.lines], dtype=np.float64)

    def phases(self) -> np.ndarray:
        return np.array([line.phase for line in self.lines], dtype=np.float64)


def fm_sidebands(
    carrier_hz: float,
    modulator_hz: float,
    modulation_index: float,
    tail_tolerance: float = DEFAULT_TAIL_TOLERANCE,
) -> list[tuple[float, float]]:
    """Raw two-sided sideband list [(carrier + n*modulator, J_n(I))].

    Runs n from -N to N with N from the truncation rule in bessel_row;
    negative orders come from the parity identity J_{-n} = (-1)^n J_n.
    Frequencies may be negative or zero here; fold_spectrum canonicalizes.
    """
    fc = float(carrier_hz)
    fm = float(modulator_hz)
    if not (math.isfinite(fc) and fc > 0.0):
        raise ValueError(f"carrier frequency must be positive, got {carrier_hz!r}")
    if not (math.isfinite(fm) and fm > 0.0):
        raise ValueError(f"modulator frequency must be positive, got {modulator_hz!r}")
    row = bessel_row(modulation_index, tail_tolerance)
    out: list[tuple[float, float]] = []
    for n in range(-row.max_order, row.max_order + 1):
        amplitude = row.values[abs(n)]
        if n < 0 and n % 2 != 0:
            amplitude = -amplitude
        out.append((fc + n * fm, amplitude))
    return out


def fold_spectrum(raw: Iterable[tuple[float, float]]) -> LineSpectrum:
    """Fold a raw two-sided line list onto nonnegative frequencies.

    A line at negative frequency -g with amplitude a becomes (g, -a);
    lines within MERGE_TOLERANCE_HZ of each other merge by summing
    amplitudes; anything at frequency zero accumulates into dc_term.
    The waveform is unchanged: this is an identity on the signal.
    """
    flipped: list[tuple[float, float]] = []
    for freq, amp in raw:
        f = float(freq)
        a = float(amp)
        if not math.isfinite(f) or not math.isfinite(a):
            raise ValueError(f"raw line ({freq!r}, {amp!r}) is not finite")
        if f < 0.0:
            f, a = -f, -a
        flipped.append((f, a))
    flipped.sort(key=lambda fa: fa[0])

    dc = 0.0
    merged: list[tuple[float, float]] = []
    for f, a in flipped:
        if f <= MERGE_TOLERANCE_HZ:
            dc += a
        elif merged and f - merged[-1][0] <= MERGE_TOLERANCE_HZ:
            merged[-1] = (merged[-1][0], merged[-1][1] + a)
        else:
            merged.append((f, a))
    lines = tuple(SpectralLine(frequency=f, amplitude=a) for f, a in merged)
    return LineSpectrum(lines=lines, dc_term=dc)


def synthesize(
    spectrum: LineSpectrum,
    t: Sequence[float] | np.ndarray,
    include_dc: bool = True,
) -> np.ndarray:
    """Evaluate dc + sum_n a_n sin(2*pi*f_n*t + phi_n) at the given times.

    include_dc=False drops the constant term; useful when comparing the
    oscillatory content of two spectra whose DC slots differ only by
    bookkeeping (a zero-frequency sine contributes nothing).
    """
    times = np.asarray(t, dtype=np.float64)
    out = np.zeros_like(times)
    for line in spectrum.lines:
        out += line.amplitude * np.sin(
            _TWO_PI * line.frequency * times + line.phase
        )
    if include_dc:
        out += spectrum.dc_term
    return out
