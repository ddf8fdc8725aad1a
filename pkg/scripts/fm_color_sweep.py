#!/usr/bin/env python3
"""Map how carrier:modulator ratio shapes the color path of an FM sweep.

For each frequency ratio, sweep the modulation index over a fixed grid,
convert every folded sideband spectrum to sRGB, and write the resulting
color strip as a PPM plus a combined CSV for later analysis.  A short
table summarizing path length and color span lands on stdout.

Usage:
    python scripts/fm_color_sweep.py [--out-dir sweeps] [--i-max 8.0]
        [--steps 81] [--base 440]
"""

from __future__ import annotations

import argparse
import math
from pathlib import Path

import numpy as np

from timbrecolor.color import OctaveMap, spectrum_to_xyz, standard_observer, xyz_to_srgb
from timbrecolor.ppm import write_ppm
from timbrecolor.spectrum import fm_sidebands, fold_spectrum

RATIOS = [(1, 1), (1, 2), (2, 3), (1, 3), (3, 2)]
STRIP_HEIGHT = 24
CELL_WIDTH = 4


def color_path(carrier, modulator, grid, octave, cmf):
    colors = []
    for index in grid:
        folded = fold_spectrum(fm_sidebands(carrier, modulator, index))
        srgb = xyz_to_srgb(spectrum_to_xyz(folded, octave, cmf))
        colors.append((srgb.r, srgb.g, srgb.b))
    return colors


def path_metrics(colors):
    steps = [
        math.dist(a, b) for a, b in zip(colors, colors[1:])
    ]
    span = 0.0
    for i in range(len(colors)):
        for j in range(i + 1, len(colors)):
            span = max(span, math.dist(colors[i], colors[j]))
    return sum(steps), max(steps, default=0.0), span


def strip_image(colors):
    image = np.zeros((STRIP_HEIGHT, CELL_WIDTH * len(colors), 3), dtype=np.uint8)
    for n, rgb in enumerate(colors):
        image[:, n * CELL_WIDTH : (n + 1) * CELL_WIDTH] = rgb
    return image


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--out-dir", default="sweeps", help="output directory")
    parser.add_argument("--i-max", type=float, default=8.0, help="top of the index grid")
    parser.add_argument("--steps", type=int, default=81, help="grid points")
    parser.add_argument("--base", type=float, default=440.0, help="octave base in Hz")
    args = parser.parse_args()

    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    grid = [args.i_max * k / (args.steps - 1) for k in range(args.steps)]
    octave = OctaveMap(base_hz=args.base)
    cmf = standard_observer()

    csv_lines = ["ratio,I,R,G,B"]
    print(f"{'ratio':>8} {'path length':>12} {'max step':>10} {'span':>8}")
    for num, den in RATIOS:
        carrier = args.base
        modulator = args.base * den / num
        colors = color_path(carrier, modulator, grid, octave, cmf)
        total, biggest, span = path_metrics(colors)
        label = f"{num}:{den}"
        print(f"{label:>8} {total:12.1f} {biggest:10.2f} {span:8.1f}")
        write_ppm(out_dir / f"ratio_{num}_{den}.ppm", strip_image(colors))
        for index, (r, g, b) in zip(grid, colors):
            csv_lines.append(f"{label},{index:.6f},{r},{g},{b}")

    (out_dir / "sweep_colors.csv").write_text("\n".join(csv_lines) + "\n")
    print(f"wrote {len(RATIOS)} strips and sweep_colors.csv to {out_dir}/")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
