"""Command line front end: timbre-to-color experiments from a shell.

Three subcommands:

* fm-path: sweep an FM voice over a grid of modulation indices, render
  the sweep as audio, and map each index's folded sideband spectrum to
  one color square; writes WAV, PPM, CSV, and a reproducibility log.
* wav2color: read a mono PCM WAV, extract its harmonic lines at a known
  fundamental, and map them to a single color swatch plus a CSV.
* envelope-transfer: build an attack-decay-sustain-release gesture,
  push it through an amplitude-scaled color map, and write the color
  gesture as text plus a strip image of the envelope in that color.

Every flag can also come from a key=value config file (--config); flags
given on the command line override file values.  Identical settings
produce byte-identical CSV and image outputs.
"""

from __future__ import annotations

import argparse
import math
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Callable, Sequence

import numpy as np

from .bessel import bessel_row
from .color import (
    ColorMatchingTable,
    OctaveMap,
    SRGBColor,
    XYZColor,
    spectrum_to_xyz,
    standard_observer,
    xyz_to_srgb,
)
from .gesture import Gesture, adsr_gesture, map_gesture, serialize_gesture
from .ppm import write_ppm
from .spectrum import LineSpectrum, fm_sidebands, fold_spectrum
from .synth import analyze_harmonics, render_fm_path
from .wavefile import read_wav, write_wav

__all__ = ["main"]

SQUARE_SIZE = 32
SQUARES_PER_ROW = 16
SWATCH_SIZE = 64
STRIP_WIDTH = 512
STRIP_HEIGHT = 32
_ENVELOPE_PEAK = 1.0


@dataclass(frozen=True)
class OptionSpec:
    name: str  # long flag name, dashes
    kind: type  # float, int, str, or bool (store_true)
    default: Any
    help: str


_FM_PATH_OPTIONS = (
    OptionSpec("fc", float, 440.0, "carrier frequency in Hz"),
    OptionSpec("fm", float, 880.0, "modulator frequency in Hz"),
    OptionSpec("i-start", float, 0.0, "first modulation index"),
    OptionSpec("i-end", float, 20.0, "last modulation index"),
    OptionSpec("i-step", float, 0.1, "modulation index step"),
    OptionSpec("base", float, 440.0, "octave base frequency in Hz"),
    OptionSpec("rate", int, 44100, "sample rate in Hz"),
    OptionSpec("seg-dur", float, 0.1, "seconds of audio per grid value"),
    OptionSpec(
        "flip-orientation",
        bool,
        False,
        "map the octave base to violet instead of red",
    ),
    OptionSpec("out-wav", str, "fm_path.wav", "output WAV path"),
    OptionSpec("out-img", str, "fm_path.ppm", "output PPM image path"),
    OptionSpec("out-csv", str, "fm_path.csv", "output CSV path"),
    OptionSpec(
        "out-log", str, "", "output log path (default: CSV path with .log suffix)"
    ),
)

_WAV2COLOR_OPTIONS = (
    OptionSpec("in", str, None, "input WAV path (required)"),
    OptionSpec("fundamental", float, None, "fundamental frequency in Hz (required)"),
    OptionSpec("max-harmonic", int, 32, "highest harmonic to extract"),
    OptionSpec("base", float, 440.0, "octave base frequency in Hz"),
    OptionSpec(
        "flip-orientation",
        bool,
        False,
        "map the octave base to violet instead of red",
    ),
    OptionSpec("out-img", str, "wav_color.ppm", "output swatch PPM path"),
    OptionSpec("out-csv", str, "wav_color.csv", "output CSV path"),
)

_ENVELOPE_OPTIONS = (
    OptionSpec("color", str, None, "base color as RRGGBB hex (required)"),
    OptionSpec("attack", float, 0.05, "attack seconds"),
    OptionSpec("decay", float, 0.15, "decay seconds"),
    OptionSpec("sustain-level", float, 0.7, "sustain amplitude in [0, 1]"),
    OptionSpec("sustain", float, 0.4, "sustain seconds"),
    OptionSpec("release", float, 0.3, "release seconds"),
    OptionSpec("samples-per-segment", int, 16, "path samples per envelope stage"),
    OptionSpec("out-gesture", str, "envelope_gesture.txt", "output gesture text path"),
    OptionSpec("out-img", str, "envelope_strip.ppm", "output strip PPM path"),
)


def _dest(name: str) -> str:
    return name.replace("-", "_")


def _add_options(parser: argparse.ArgumentParser, options: Sequence[OptionSpec]) -> None:
    parser.add_argument(
        "--config",
        default=None,
        metavar="PATH",
        help="key=value file supplying defaults for any flag below",
    )
    for opt in options:
        flag = f"--{opt.name}"
        if opt.kind is bool:
            parser.add_argument(
                flag,
                dest=_dest(opt.name),
                action="store_true",
                default=argparse.SUPPRESS,
                help=opt.help,
            )
        else:
            parser.add_argument(
                flag,
                dest=_dest(opt.name),
                type=opt.kind,
                default=argparse.SUPPRESS,
                metavar=opt.name.upper().replace("-", "_"),
                help=opt.help,
            )


def _parse_config_value(opt: OptionSpec, raw: str, lineno: int) -> Any:
    if opt.kind is bool:
        lowered = raw.strip().lower()
        if lowered in ("1", "true", "yes", "on"):
            return True
        if lowered in ("0", "false", "no", "off"):
            return False
        raise ValueError(
            f"config line {lineno}: boolean key '{opt.name}' got {raw!r}"
        )
    try:
        return opt.kind(raw.strip())
    except ValueError:
        raise ValueError(
            f"config line {lineno}: key '{opt.name}' expects "
            f"{opt.kind.__name__}, got {raw!r}"
        ) from None


def _load_config(path: str, options: Sequence[OptionSpec]) -> dict[str, Any]:
    by_name = {opt.name: opt for opt in options}
    loaded: dict[str, Any] = {}
    text = Path(path).read_text(encoding="utf-8")
    for lineno, rawline in enumerate(text.splitlines(), start=1):
        line = rawline.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ValueError(f"config line {lineno}: expected key=value, got {line!r}")
        key, raw = line.split("=", 1)
        name = key.strip().replace("_", "-")
        if name not in by_name:
            raise ValueError(f"config line {lineno}: unknown key '{key.strip()}'")
        loaded[_dest(name)] = _parse_config_value(by_name[name], raw, lineno)
    return loaded


def _merge_settings(
    args: argparse.Namespace, options: Sequence[OptionSpec]
) -> dict[str, Any]:
    settings = {_dest(opt.name): opt.default for opt in options}
    if args.config is not None:
        settings.update(_load_config(args.config, options))
    for opt in options:
        dest = _dest(opt.name)
        if hasattr(args, dest):
            settings[dest] = getattr(args, dest)
    for opt in options:
        if settings[_dest(opt.name)] is None:
            raise ValueError(f"missing required flag --{opt.name}")
    return settings


def build_index_grid(start: float, end: float, step: float) -> list[float]:
    """Uniform grid start, start+step, ..., covering [start, end]."""
    if not (math.isfinite(start) and math.isfinite(end) and math.isfinite(step)):
        raise ValueError("grid bounds and step must be finite")
    if step <= 0.0:
        raise ValueError(f"grid step must be positive, got {step}")
    if end < start:
        raise ValueError(f"grid end {end} below start {start}")
    count = int(round((end - start) / step)) + 1
    return [start + k * step for k in range(count)]


def _csv_open(path: str):
    return open(path, "w", encoding="ascii", newline="\n")


@dataclass(frozen=True)
class PathRow:
    index: float
    xyz: XYZColor
    srgb: SRGBColor
    sideband_order: int
    weight_sum: float


def _fm_path_rows(
    fc: float,
    fm: float,
    grid: Sequence[float],
    octave: OctaveMap,
    cmf: ColorMatchingTable,
) -> list[PathRow]:
    rows = []
    for index in grid:
        coeffs = bessel_row(index)
        folded = fold_spectrum(fm_sidebands(fc, fm, index))
        xyz = spectrum_to_xyz(folded, octave, cmf)
        srgb = xyz_to_srgb(xyz)
        weight = float(np.sum(np.abs(folded.amplitudes())))
        rows.append(
            PathRow(
                index=index,
                xyz=xyz,
                srgb=srgb,
                sideband_order=coeffs.max_order,
                weight_sum=weight,
            )
        )
    return rows


def _squares_image(colors: Sequence[SRGBColor]) -> np.ndarray:
    count = len(colors)
    cols = min(SQUARES_PER_ROW, count)
    rows = (count + SQUARES_PER_ROW - 1) // SQUARES_PER_ROW
    image = np.zeros((rows * SQUARE_SIZE, cols * SQUARE_SIZE, 3), dtype=np.uint8)
    for n, c in enumerate(colors):
        r, col = divmod(n, SQUARES_PER_ROW)
        image[
            r * SQUARE_SIZE : (r + 1) * SQUARE_SIZE,
            col * SQUARE_SIZE : (col + 1) * SQUARE_SIZE,
        ] = (c.r, c.g, c.b)
    return image


def _srgb_distance(a: SRGBColor, b: SRGBColor) -> float:
    return math.sqrt((a.r - b.r) ** 2 + (a.g - b.g) ** 2 + (a.b - b.b) ** 2)


def _run_fm_path(args: argparse.Namespace) -> int:
    s = _merge_settings(args, _FM_PATH_OPTIONS)
    grid = build_index_grid(s["i_start"], s["i_end"], s["i_step"])
    octave = OctaveMap(base_hz=s["base"], flip=s["flip_orientation"])
    cmf = standard_observer()
    rows = _fm_path_rows(s["fc"], s["fm"], grid, octave, cmf)

    wave = render_fm_path(s["fc"], s["fm"], grid, s["seg_dur"], s["rate"])
    write_wav(wave, s["out_wav"])

    with _csv_open(s["out_csv"]) as fh:
        fh.write("I,X,Y,Z,R,G,B\n")
        for row in rows:
            fh.write(
                f"{row.index:.6f},{row.xyz.x:.6f},{row.xyz.y:.6f},"
                f"{row.xyz.z:.6f},{row.srgb.r},{row.srgb.g},{row.srgb.b}\n"
            )

    write_ppm(s["out_img"], _squares_image([row.srgb for row in rows]))

    colors = [row.srgb for row in rows]
    max_adjacent = max(
        (_srgb_distance(a, b) for a, b in zip(colors, colors[1:])), default=0.0
    )
    span = 0.0
    for i in range(len(colors)):
        for j in range(i + 1, len(colors)):
            span = max(span, _srgb_distance(colors[i], colors[j]))

    log_path = s["out_log"] or str(Path(s["out_csv"]).with_suffix(".log"))
    with _csv_open(log_path) as fh:
        fh.write("command: fm-path\n")
        for key in (
            "fc",
            "fm",
            "i_start",
            "i_end",
            "i_step",
            "base",
            "rate",
            "seg_dur",
            "flip_orientation",
        ):
            fh.write(f"{key}: {s[key]}\n")
        fh.write(f"grid_rows: {len(grid)}\n")
        fh.write(f"segment_samples: {int(round(s['seg_dur'] * s['rate']))}\n")
        fh.write(f"total_samples: {len(wave.samples)}\n")
        fh.write(f"duration_sec: {wave.duration_sec:.6f}\n")
        for row in rows:
            fh.write(
                f"I={row.index:.6f} N={row.sideband_order} "
                f"weight_sum={row.weight_sum:.9f}\n"
            )
        fh.write(f"max_adjacent_srgb_distance: {max_adjacent:.6f}\n")
        fh.write(f"full_span_srgb_distance: {span:.6f}\n")

    print(
        f"fm-path: {len(grid)} colors, {len(wave.samples)} samples "
        f"({wave.duration_sec:.3f} s) -> {s['out_wav']}, {s['out_csv']}, "
        f"{s['out_img']}, {log_path}"
    )
    return 0


def _lines_csv(fh, spectrum: LineSpectrum) -> None:
    fh.write("frequency,amplitude,phase\n")
    for line in spectrum.lines:
        fh.write(f"{line.frequency:.6f},{line.amplitude:.6f},{line.phase:.6f}\n")


def _run_wav2color(args: argparse.Namespace) -> int:
    s = _merge_settings(args, _WAV2COLOR_OPTIONS)
    wave = read_wav(s["in"])
    spectrum = analyze_harmonics(wave, s["fundamental"], s["max_harmonic"])
    octave = OctaveMap(base_hz=s["base"], flip=s["flip_orientation"])
    xyz = spectrum_to_xyz(spectrum, octave, standard_observer())
    srgb = xyz_to_srgb(xyz)

    with _csv_open(s["out_csv"]) as fh:
        _lines_csv(fh, spectrum)
        fh.write("\n")
        fh.write("X,Y,Z,R,G,B\n")
        fh.write(
            f"{xyz.x:.6f},{xyz.y:.6f},{xyz.z:.6f},{srgb.r},{srgb.g},{srgb.b}\n"
        )

    swatch = np.zeros((SWATCH_SIZE, SWATCH_SIZE, 3), dtype=np.uint8)
    swatch[:, :] = (srgb.r, srgb.g, srgb.b)
    write_ppm(s["out_img"], swatch)

    print(
        f"wav2color: {len(spectrum.lines)} lines -> "
        f"#{srgb.r:02X}{srgb.g:02X}{srgb.b:02X} ({s['out_csv']}, {s['out_img']})"
    )
    return 0


def _parse_hex_color(text: str) -> tuple[int, int, int]:
    raw = text.strip().lstrip("#")
    if len(raw) != 6 or any(c not in "0123456789abcdefABCDEF" for c in raw):
        raise ValueError(f"color must be 6 hex digits (RRGGBB), got {text!r}")
    return int(raw[0:2], 16), int(raw[2:4], 16), int(raw[4:6], 16)


def _envelope_breakpoints(gesture: Gesture) -> tuple[np.ndarray, np.ndarray]:
    return gesture.vertex_points[:, 0], gesture.vertex_points[:, 1]


def _run_envelope_transfer(args: argparse.Namespace) -> int:
    s = _merge_settings(args, _ENVELOPE_OPTIONS)
    base_rgb = _parse_hex_color(s["color"])
    envelope = adsr_gesture(
        attack_level=_ENVELOPE_PEAK,
        sustain_level=s["sustain_level"],
        durations=[s["attack"], s["decay"], s["sustain"], s["release"]],
        samples_per_segment=s["samples_per_segment"],
    )

    scale = np.array(base_rgb, dtype=np.float64)

    def amplitude_to_color(point: np.ndarray) -> np.ndarray:
        # (time, amplitude) -> amplitude-scaled base color, black at zero
        return point[1] * scale

    colorized = map_gesture(amplitude_to_color, envelope)
    Path(s["out_gesture"]).write_text(serialize_gesture(colorized), encoding="ascii")

    times, levels = _envelope_breakpoints(envelope)
    total = float(times[-1])
    strip = np.zeros((STRIP_HEIGHT, STRIP_WIDTH, 3), dtype=np.uint8)
    for x in range(STRIP_WIDTH):
        t = total * (x + 0.5) / STRIP_WIDTH
        amp = float(np.interp(t, times, levels))
        strip[:, x] = [int(math.floor(amp * c + 0.5)) for c in base_rgb]
    write_ppm(s["out_img"], strip)

    print(
        f"envelope-transfer: {total:.3f} s envelope in "
        f"#{base_rgb[0]:02X}{base_rgb[1]:02X}{base_rgb[2]:02X} -> "
        f"{s['out_gesture']}, {s['out_img']}"
    )
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="timbrecolor",
        description="FM timbre sweeps, sound-to-color mapping, envelope gestures",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    fm_path = sub.add_parser(
        "fm-path",
        help="render a modulation-index sweep and its color path",
    )
    _add_options(fm_path, _FM_PATH_OPTIONS)
    fm_path.set_defaults(handler=_run_fm_path)

    wav2color = sub.add_parser(
        "wav2color",
        help="map a WAV's harmonic spectrum to one color",
    )
    _add_options(wav2color, _WAV2COLOR_OPTIONS)
    wav2color.set_defaults(handler=_run_wav2color)

    envelope = sub.add_parser(
        "envelope-transfer",
        help="push an ADSR envelope gesture into color space",
    )
    _add_options(envelope, _ENVELOPE_OPTIONS)
    envelope.set_defaults(handler=_run_envelope_transfer)

    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    handler: Callable[[argparse.Namespace], int] = args.handler
    try:
        return handler(args)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
