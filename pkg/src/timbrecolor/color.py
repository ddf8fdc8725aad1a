"""Octave-based frequency-to-color mapping over the CIE 1931 observer.

Audible frequencies and visible wavelengths both span about an octave,
which suggests the mapping used here: reduce a frequency g by powers of
two into [f, 2f) for a chosen base f, then send it to the wavelength
760 * f / g nanometers.  The base lands on 760 nm (red), the top of the
octave approaches 380 nm (violet), so rising pitch runs red to violet.
A whole spectrum becomes a color by averaging the color-matching values
of its lines, weighted by absolute amplitude.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources

import numpy as np

from .spectrum import LineSpectrum

__all__ = [
    "VISIBLE_MIN_NM",
    "VISIBLE_MAX_NM",
    "OCTAVE_TOP_NM",
    "CMFFormatError",
    "DegenerateSpectrumError",
    "ColorMatchingTable",
    "XYZColor",
    "SRGBColor",
    "OctaveMap",
    "load_cmf",
    "standard_observer",
    "wavelength_to_xyz",
    "octave_reduce",
    "freq_to_wavelength",
    "spectrum_xyz_raw",
    "spectrum_to_xyz",
    "project_to_cube",
    "xyz_to_srgb",
    "chromaticity",
]

VISIBLE_MIN_NM = 380.0
VISIBLE_MAX_NM = 780.0
OCTAVE_TOP_NM = 760.0  # wavelength assigned to the octave base frequency

_GRID_STEP_NM = 5.0
_GRID_ROWS = 81

# Linear sRGB from XYZ, D65 white point, as standardized.
_XYZ_TO_RGB = np.array(
    [
        [3.2404542, -1.5371385, -0.4985314],
        [-0.9692660, 1.8760108, 0.0415560],
        [0.0556434, -0.2040259, 1.0572252],
    ]
)

_LINEAR_THRESHOLD = 0.0031308
_AUDIBLE_MIN_HZ = 20.0
_AUDIBLE_MAX_HZ = 20000.0


class CMFFormatError(ValueError):
    """Raised when a color-matching-function table fails to parse."""


class DegenerateSpectrumError(ValueError):
    """Raised when a spectrum carries no weighable line content."""


@dataclass(frozen=True)
class XYZColor:
    x: float
    y: float
    z: float

    def as_array(self) -> np.ndarray:
        return np.array([self.x, self.y, self.z], dtype=np.float64)


@dataclass(frozen=True)
class SRGBColor:
    r: int
    g: int
    b: int

    def __post_init__(self) -> None:
        for name, value in (("r", self.r), ("g", self.g), ("b", self.b)):
            if not (0 <= value <= 255):
                raise ValueError(f"sRGB channel {name} out of range: {value}")


@dataclass(frozen=True)
class OctaveMap:
    """Frequency octave [base_hz, 2*base_hz) mapped onto [380, 760] nm.

    flip reverses the orientation so the base maps to 380 nm instead of
    760 nm; the image interval is the same either way.
    """

    base_hz: float = 440.0
    flip: bool = False

    def __post_init__(self) -> None:
        if not (_AUDIBLE_MIN_HZ <= self.base_hz <= _AUDIBLE_MAX_HZ):
            raise ValueError(
                f"octave base must lie in [{_AUDIBLE_MIN_HZ}, {_AUDIBLE_MAX_HZ}] Hz, "
                f"got {self.base_hz!r}"
            )


@dataclass(frozen=True, eq=False)
class ColorMatchingTable:
    """CIE observer samples on the uniform 5 nm grid from 380 to 780 nm."""

    wavelengths: np.ndarray
    xbar: np.ndarray
    ybar: np.ndarray
    zbar: np.ndarray

    def __post_init__(self) -> None:
        w = self.wavelengths
        if len(w) != _GRID_ROWS:
            raise CMFFormatError(
                f"expected {_GRID_ROWS} grid rows covering "
                f"[{VISIBLE_MIN_NM}, {VISIBLE_MAX_NM}] nm, got {len(w)}"
            )
        if w[0] != VISIBLE_MIN_NM or w[-1] != VISIBLE_MAX_NM:
            raise CMFFormatError(
                f"grid must cover [{VISIBLE_MIN_NM}, {VISIBLE_MAX_NM}] nm, "
                f"got [{w[0]}, {w[-1]}]"
            )
        steps = np.diff(w)
        if not np.all(steps == _GRID_STEP_NM):
            raise CMFFormatError("grid wavelengths must increase in 5 nm steps")
        for name, col in (("xbar", self.xbar), ("ybar", self.ybar), ("zbar", self.zbar)):
            if len(col) != len(w):
                raise CMFFormatError(f"column {name} length differs from grid")
            if np.any(~np.isfinite(col)) or np.any(col < 0.0):
                raise CMFFormatError(f"column {name} must be finite and nonnegative")


def load_cmf(text: str) -> ColorMatchingTable:
    """Parse a plain-text table: wavelength xbar ybar zbar per line.

    Blank lines are skipped and '#' starts a comment.  Errors carry the
    offending line number.
    """
    rows: list[tuple[float, float, float, float]] = []
    for lineno, rawline in enumerate(text.splitlines(), start=1):
        line = rawline.split("#", 1)[0].strip()
        if not line:
            continue
        fields = line.split()
        if len(fields) != 4:
            raise CMFFormatError(
                f"line {lineno}: expected 4 columns, got {len(fields)}"
            )
        try:
            values = tuple(float(f) for f in fields)
        except ValueError as exc:
            raise CMFFormatError(f"line {lineno}: {exc}") from None
        rows.append(values)  # type: ignore[arg-type]
    if not rows:
        raise CMFFormatError("table contains no data rows")
    data = np.array(rows, dtype=np.float64)
    return ColorMatchingTable(
        wavelengths=data[:, 0], xbar=data[:, 1], ybar=data[:, 2], zbar=data[:, 3]
    )


@lru_cache(maxsize=1)
def standard_observer() -> ColorMatchingTable:
    """The packaged CIE 1931 2-degree observer table."""
    text = (
        resources.files("timbrecolor.data")
        .joinpath("cie1931_observer_5nm.txt")
        .read_text(encoding="utf-8")
    )
    return load_cmf(text)


def wavelength_to_xyz(wavelength_nm: float, cmf: ColorMatchingTable) -> XYZColor:
    """Linearly interpolated (xbar, ybar, zbar) at the given wavelength."""
    lam = float(wavelength_nm)
    if not (VISIBLE_MIN_NM <= lam <= VISIBLE_MAX_NM):
        raise ValueError(
            f"wavelength {lam} nm outside table range "
            f"[{VISIBLE_MIN_NM}, {VISIBLE_MAX_NM}]"
        )
    return XYZColor(
        x=float(np.interp(lam, cmf.wavelengths, cmf.xbar)),
        y=float(np.interp(lam, cmf.wavelengths, cmf.ybar)),
        z=float(np.interp(lam, cmf.wavelengths, cmf.zbar)),
    )


def octave_reduce(frequency_hz: float, octave: OctaveMap) -> float:
    """Scale by powers of two into [base, 2*base).

    Doubling and halving are exact in binary floating point, so
    octave_reduce(2*g) == octave_reduce(g) holds exactly.  The interval
    is half open: an input at exactly 2*base reduces to the base.
    """
    g = float(frequency_hz)
    if not math.isfinite(g) or g <= 0.0:
        raise ValueError(f"frequency must be positive, got {frequency_hz!r}")
    base = octave.base_hz
    while g >= 2.0 * base:
        g *= 0.5
    while g < base:
        g *= 2.0
    return g


def freq_to_wavelength(frequency_hz: float, octave: OctaveMap) -> float:
    """Map a frequency already inside [base, 2*base] to nanometers.

    The base maps to 760 nm and twice the base to 380 nm, both exactly;
    in between the map is 760 * base / g, decreasing, so rising pitch
    moves red to violet.  With flip set the assignment reverses.
    """
    g = float(frequency_hz)
    base = octave.base_hz
    if not (base <= g <= 2.0 * base):
        raise ValueError(
            f"frequency {g} Hz outside the octave [{base}, {2.0 * base}]"
        )
    lam = OCTAVE_TOP_NM * (base / g)
    if octave.flip:
        lam = (VISIBLE_MIN_NM + OCTAVE_TOP_NM) - lam
    return lam


def spectrum_xyz_raw(
    spectrum: LineSpectrum,
    octave: OctaveMap,
    cmf: ColorMatchingTable,
) -> XYZColor:
    """Amplitude-weighted average of line colors, before cube projection.

    Weights are absolute amplitudes: a line's sign is a phase flip and
    phase carries no color.  The DC term is excluded; it is silent.
    Raises DegenerateSpectrumError when the total weight is zero, which
    covers empty spectra, all-zero amplitudes, and pure-DC content.
    """
    total = 0.0
    acc = np.zeros(3)
    for line in spectrum.lines:
        weight = abs(line.amplitude)
        if weight == 0.0:
            continue
        reduced = octave_reduce(line.frequency, octave)
        xyz = wavelength_to_xyz(freq_to_wavelength(reduced, octave), cmf)
        acc += weight * xyz.as_array()
        total += weight
    if total == 0.0:
        raise DegenerateSpectrumError(
            "spectrum has no nonzero-amplitude lines to color"
        )
    acc /= total
    return XYZColor(x=float(acc[0]), y=float(acc[1]), z=float(acc[2]))


def spectrum_to_xyz(
    spectrum: LineSpectrum,
    octave: OctaveMap,
    cmf: ColorMatchingTable,
) -> XYZColor:
    """Weighted-average color of a folded spectrum, projected to the cube."""
    return project_to_cube(spectrum_xyz_raw(spectrum, octave, cmf))


def project_to_cube(xyz: XYZColor) -> XYZColor:
    """Bring a tristimulus triple into [0, 1]^3.

    Points already inside are fixed.  Otherwise divide by the largest
    component, which preserves chromaticity, and clamp any negatives.
    """
    v = xyz.as_array()
    top = float(np.max(v))
    if 0.0 <= float(np.min(v)) and top <= 1.0:
        return xyz
    if top > 0.0:
        v = v / top
    v = np.clip(v, 0.0, 1.0)
    return XYZColor(x=float(v[0]), y=float(v[1]), z=float(v[2]))


def _transfer(channel: float) -> float:
    if channel <= _LINEAR_THRESHOLD:
        return 12.92 * channel
    return 1.055 * channel ** (1.0 / 2.4) - 0.055


def xyz_to_srgb(xyz: XYZColor) -> SRGBColor:
    """Convert cube XYZ to 8-bit sRGB (D65, standard transfer curve).

    Linear channels are clamped to [0, 1] before the transfer curve;
    quantization rounds half up so results are platform independent.
    """
    linear = _XYZ_TO_RGB @ xyz.as_array()
    linear = np.clip(linear, 0.0, 1.0)
    channels = [math.floor(255.0 * _transfer(float(c)) + 0.5) for c in linear]
    return SRGBColor(r=channels[0], g=channels[1], b=channels[2])


def chromaticity(xyz: XYZColor) -> tuple[float, float]:
    """(x, y) = (X, Y) / (X + Y + Z); scale free."""
    total = xyz.x + xyz.y + xyz.z
    if total == 0.0:
        raise ValueError("chromaticity undefined for the zero tristimulus")
    return xyz.x / total, xyz.y / total
