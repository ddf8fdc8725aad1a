"""Gestures: digraphs whose arrows carry sampled paths in R^d.

A gesture assigns a point to every vertex and a sampled path to every
arrow, with each path starting at its source vertex's point and ending
at its target's.  Mapping every point through a function f yields
another gesture on the same digraph, and this mapping respects identity
and composition at the sample level, so gesture-valued constructions
can be pushed between spaces (for example, amplitude-time envelopes
into color space) without re-deriving the combinatorics.

Bands are sampled fixed-endpoint homotopies between two paths: a stack
of rows interpolating from one boundary path to the other while pinning
both shared endpoints.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

__all__ = [
    "ENDPOINT_TOLERANCE",
    "EndpointError",
    "GestureFormatError",
    "Digraph",
    "SampledPath",
    "Band",
    "Gesture",
    "constant_path",
    "reverse",
    "concatenate",
    "linear_band",
    "make_gesture",
    "map_path",
    "map_gesture",
    "adsr_gesture",
    "serialize_gesture",
    "parse_gesture",
]

ENDPOINT_TOLERANCE = 1e-9


class EndpointError(ValueError):
    """Raised when endpoints that must coincide do not."""


class GestureFormatError(ValueError):
    """Raised when gesture text fails to parse."""


@dataclass(frozen=True)
class Digraph:
    """Finite directed multigraph; arrows are (source, target) vertex ids."""

    vertex_count: int
    arrows: tuple[tuple[int, int], ...]

    def __post_init__(self) -> None:
        if int(self.vertex_count) != self.vertex_count or self.vertex_count < 1:
            raise ValueError(
                f"vertex count must be a positive integer, got {self.vertex_count!r}"
            )
        for idx, (src, dst) in enumerate(self.arrows):
            for name, v in (("source", src), ("target", dst)):
                if int(v) != v or not (0 <= v < self.vertex_count):
                    raise ValueError(
                        f"arrow {idx}: {name} {v!r} outside 0..{self.vertex_count - 1}"
                    )


@dataclass(frozen=True, eq=False)
class SampledPath:
    """At least two uniform samples of a path in R^d, rows are points."""

    points: np.ndarray

    def __post_init__(self) -> None:
        arr = np.asarray(self.points, dtype=np.float64)
        if arr.ndim != 2:
            raise ValueError(f"path points must be a 2-D array, got shape {arr.shape}")
        if arr.shape[0] < 2:
            raise ValueError(f"path needs at least 2 samples, got {arr.shape[0]}")
        if arr.shape[1] < 1:
            raise ValueError("path points need at least 1 coordinate")
        if not np.all(np.isfinite(arr)):
            raise ValueError("path points must be finite")
        object.__setattr__(self, "points", arr)

    @property
    def sample_count(self) -> int:
        return self.points.shape[0]

    @property
    def dimension(self) -> int:
        return self.points.shape[1]

    @property
    def start(self) -> np.ndarray:
        return self.points[0]

    @property
    def end(self) -> np.ndarray:
        return self.points[-1]


def _close(a: np.ndarray, b: np.ndarray) -> bool:
    return bool(np.all(np.abs(a - b) <= ENDPOINT_TOLERANCE))


@dataclass(frozen=True, eq=False)
class Band:
    """Fixed-endpoint homotopy sample: rows interpolate between boundaries."""

    rows: tuple[SampledPath, ...]

    def __post_init__(self) -> None:
        if len(self.rows) < 2:
            raise ValueError(f"band needs at least 2 rows, got {len(self.rows)}")
        first = self.rows[0]
        for i, row in enumerate(self.rows):
            if row.sample_count != first.sample_count or row.dimension != first.dimension:
                raise ValueError(
                    f"band row {i} has shape {row.points.shape}, "
                    f"expected {first.points.shape}"
                )
            if not _close(row.start, first.start) or not _close(row.end, first.end):
                raise EndpointError(
                    f"band row {i} does not share the boundary endpoints"
                )


@dataclass(frozen=True, eq=False)
class Gesture:
    """Digraph with a point per vertex and a path per arrow.

    Construct through make_gesture, which checks the endpoint law: each
    arrow's path runs from its source vertex point to its target's.
    """

    digraph: Digraph
    vertex_points: np.ndarray
    arrow_paths: tuple[SampledPath, ...]

    @property
    def dimension(self) -> int:
        return self.vertex_points.shape[1]


def make_gesture(
    digraph: Digraph,
    vertex_points: np.ndarray | Sequence[Sequence[float]],
    arrow_paths: Sequence[SampledPath],
) -> Gesture:
    """Validate and assemble a gesture.

    vertex_points has one row per vertex.  For each arrow a = (s, t) the
    path for a must start within ENDPOINT_TOLERANCE of vertex point s
    and end within it of vertex point t.
    """
    points = np.asarray(vertex_points, dtype=np.float64)
    if points.ndim != 2 or points.shape[0] != digraph.vertex_count:
        raise ValueError(
            f"vertex points must be ({digraph.vertex_count}, d), got {points.shape}"
        )
    if not np.all(np.isfinite(points)):
        raise ValueError("vertex points must be finite")
    paths = tuple(arrow_paths)
    if len(paths) != len(digraph.arrows):
        raise ValueError(
            f"expected {len(digraph.arrows)} arrow paths, got {len(paths)}"
        )
    for idx, ((src, dst), path) in enumerate(zip(digraph.arrows, paths)):
        if path.dimension != points.shape[1]:
            raise ValueError(
                f"arrow {idx}: path dimension {path.dimension} differs from "
                f"vertex dimension {points.shape[1]}"
            )
        if not _close(path.start, points[src]):
            raise EndpointError(
                f"arrow {idx}: path starts at {path.start.tolist()}, "
                f"source vertex {src} sits at {points[src].tolist()}"
            )
        if not _close(path.end, points[dst]):
            raise EndpointError(
                f"arrow {idx}: path ends at {path.end.tolist()}, "
                f"target vertex {dst} sits at {points[dst].tolist()}"
            )
    return Gesture(digraph=digraph, vertex_points=points, arrow_paths=paths)


def constant_path(point: Sequence[float] | np.ndarray, sample_count: int = 2) -> SampledPath:
    """The path sitting still at one point."""
    if sample_count < 2:
        raise ValueError(f"need at least 2 samples, got {sample_count}")
    p = np.asarray(point, dtype=np.float64).reshape(1, -1)
    return SampledPath(points=np.repeat(p, sample_count, axis=0))


def reverse(path: SampledPath) -> SampledPath:
    """Traverse backwards; an involution at the sample level."""
    return SampledPath(points=path.points[::-1].copy())


def concatenate(first: SampledPath, second: SampledPath) -> SampledPath:
    """Join end to start, keeping the junction sample once.

    Sample counts add as n + m - 1, which makes concatenation strictly
    associative on the underlying arrays.
    """
    if first.dimension != second.dimension:
        raise ValueError(
            f"cannot concatenate paths in R^{first.dimension} and R^{second.dimension}"
        )
    if not _close(first.end, second.start):
        raise EndpointError(
            f"paths do not meet: first ends at {first.end.tolist()}, "
            f"second starts at {second.start.tolist()}"
        )
    return SampledPath(points=np.vstack([first.points, second.points[1:]]))


def linear_band(from_path: SampledPath, to_path: SampledPath, row_count: int) -> Band:
    """Straight-line homotopy between two paths sharing both endpoints.

    Row j is the affine mix ((K-1-j)*from + j*to) / (K-1); the boundary
    rows are returned as the inputs themselves so they match exactly.
    """
    if row_count < 2:
        raise ValueError(f"band needs at least 2 rows, got {row_count}")
    if from_path.points.shape != to_path.points.shape:
        raise ValueError(
            f"paths must share shape, got {from_path.points.shape} "
            f"and {to_path.points.shape}"
        )
    if not _close(from_path.start, to_path.start) or not _close(
        from_path.end, to_path.end
    ):
        raise EndpointError("linear band requires paths sharing both endpoints")
    k = row_count - 1
    rows = []
    for j in range(row_count):
        if j == 0:
            rows.append(from_path)
        elif j == k:
            rows.append(to_path)
        else:
            mixed = ((k - j) * from_path.points + j * to_path.points) / k
            rows.append(SampledPath(points=mixed))
    return Band(rows=tuple(rows))


PointMap = Callable[[np.ndarray], np.ndarray]


def map_path(f: PointMap, path: SampledPath) -> SampledPath:
    """Apply f to every sample point; f maps a 1-D point to a 1-D point."""
    images = []
    width = None
    for i in range(path.sample_count):
        try:
            image = np.asarray(f(path.points[i]), dtype=np.float64).reshape(-1)
        except Exception as exc:
            raise ValueError(f"point map failed at sample {i}: {exc}") from exc
        if width is None:
            width = image.shape[0]
        elif image.shape[0] != width:
            raise ValueError(
                f"point map changed output dimension at sample {i}: "
                f"{image.shape[0]} != {width}"
            )
        images.append(image)
    return SampledPath(points=np.vstack(images))


def map_gesture(f: PointMap, gesture: Gesture) -> Gesture:
    """Apply f to all vertex points and path samples; same digraph.

    Endpoint constraints survive because path endpoints and their vertex
    points are the same inputs to the same deterministic f; validation
    runs again on the result anyway.
    """
    mapped_vertices = []
    for v in range(gesture.digraph.vertex_count):
        try:
            image = np.asarray(
                f(gesture.vertex_points[v]), dtype=np.float64
            ).reshape(-1)
        except Exception as exc:
            raise ValueError(f"point map failed at vertex {v}: {exc}") from exc
        mapped_vertices.append(image)
    mapped_paths = []
    for idx, path in enumerate(gesture.arrow_paths):
        try:
            mapped_paths.append(map_path(f, path))
        except ValueError as exc:
            raise ValueError(f"arrow {idx}: {exc}") from exc
    return make_gesture(gesture.digraph, np.vstack(mapped_vertices), mapped_paths)


def adsr_gesture(
    attack_level: float,
    sustain_level: float,
    durations: Sequence[float],
    samples_per_segment: int = 16,
) -> Gesture:
    """Attack-decay-sustain-release envelope on the 5-vertex line digraph.

    durations are the four positive stage lengths; vertices in (time,
    amplitude) space are (0,0), (t1,attack), (t2,sustain), (t3,sustain),
    (t4,0) with cumulative times, and each arrow carries the straight
    line between its endpoints.
    """
    for name, level in (("attack", attack_level), ("sustain", sustain_level)):
        if not (0.0 <= level <= 1.0):
            raise ValueError(f"{name} level must lie in [0, 1], got {level!r}")
    stages = [float(d) for d in durations]
    if len(stages) != 4:
        raise ValueError(f"need 4 stage durations, got {len(stages)}")
    for i, d in enumerate(stages):
        if not (math.isfinite(d) and d > 0.0):
            raise ValueError(
                f"stage {i} duration must be positive, got {d!r} "
                f"(times must strictly increase)"
            )
    if samples_per_segment < 2:
        raise ValueError(
            f"need at least 2 samples per segment, got {samples_per_segment}"
        )
    times = [0.0]
    for d in stages:
        times.append(times[-1] + d)
    levels = [0.0, attack_level, sustain_level, sustain_level, 0.0]
    vertices = np.array(list(zip(times, levels)), dtype=np.float64)
    digraph = Digraph(vertex_count=5, arrows=((0, 1), (1, 2), (2, 3), (3, 4)))
    paths = []
    for src, dst in digraph.arrows:
        pts = np.linspace(vertices[src], vertices[dst], samples_per_segment)
        paths.append(SampledPath(points=pts))
    return make_gesture(digraph, vertices, paths)


def _fmt(value: float) -> str:
    return repr(float(value))


def serialize_gesture(gesture: Gesture) -> str:
    """Line-oriented text form; see parse_gesture for the grammar."""
    out = [f"digraph {gesture.digraph.vertex_count} {len(gesture.digraph.arrows)}"]
    for src, dst in gesture.digraph.arrows:
        out.append(f"a {src} {dst}")
    for v in range(gesture.digraph.vertex_count):
        coords = " ".join(_fmt(c) for c in gesture.vertex_points[v])
        out.append(f"v {coords}")
    for idx, path in enumerate(gesture.arrow_paths):
        out.append(f"p {idx} {path.sample_count}")
        for i in range(path.sample_count):
            out.append(" ".join(_fmt(c) for c in path.points[i]))
    return "\n".join(out) + "\n"


def parse_gesture(text: str) -> Gesture:
    """Parse the gesture text format and validate the endpoint law.

    Grammar, one record per line, '#' comments and blank lines ignored:

        digraph V A          header: vertex count, arrow count
        a SRC DST            A arrow lines, in arrow order
        v X0 X1 ... Xd-1     V vertex-point lines, in vertex order
        p INDEX COUNT        per-arrow path block, in arrow order,
        X0 X1 ... Xd-1       followed by COUNT sample-point lines

    All coordinates are decimal floats; the shared dimension d is set by
    the first vertex line.
    """
    lines: list[tuple[int, str]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        stripped = raw.split("#", 1)[0].strip()
        if stripped:
            lines.append((lineno, stripped))
    cursor = 0

    def take(expect: str) -> tuple[int, str]:
        nonlocal cursor
        if cursor >= len(lines):
            raise GestureFormatError(f"unexpected end of text, expected {expect}")
        item = lines[cursor]
        cursor += 1
        return item

    lineno, header = take("'digraph V A' header")
    fields = header.split()
    if len(fields) != 3 or fields[0] != "digraph":
        raise GestureFormatError(f"line {lineno}: expected 'digraph V A' header")
    try:
        vertex_count, arrow_count = int(fields[1]), int(fields[2])
    except ValueError:
        raise GestureFormatError(f"line {lineno}: counts must be integers") from None

    arrows = []
    for _ in range(arrow_count):
        lineno, line = take("arrow line 'a SRC DST'")
        fields = line.split()
        if len(fields) != 3 or fields[0] != "a":
            raise GestureFormatError(f"line {lineno}: expected 'a SRC DST'")
        try:
            arrows.append((int(fields[1]), int(fields[2])))
        except ValueError:
            raise GestureFormatError(
                f"line {lineno}: arrow endpoints must be integers"
            ) from None

    def parse_point(lineno: int, fields: list[str]) -> list[float]:
        try:
            return [float(f) for f in fields]
        except ValueError:
            raise GestureFormatError(
                f"line {lineno}: coordinates must be floats"
            ) from None

    vertex_rows = []
    for _ in range(vertex_count):
        lineno, line = take("vertex line 'v X0 ...'")
        fields = line.split()
        if len(fields) < 2 or fields[0] != "v":
            raise GestureFormatError(f"line {lineno}: expected 'v X0 X1 ...'")
        row = parse_point(lineno, fields[1:])
        if vertex_rows and len(row) != len(vertex_rows[0]):
            raise GestureFormatError(
                f"line {lineno}: vertex dimension {len(row)} differs from "
                f"{len(vertex_rows[0])}"
            )
        vertex_rows.append(row)

    paths = []
    for expected_idx in range(arrow_count):
        lineno, line = take("path header 'p INDEX COUNT'")
        fields = line.split()
        if len(fields) != 3 or fields[0] != "p":
            raise GestureFormatError(f"line {lineno}: expected 'p INDEX COUNT'")
        try:
            idx, count = int(fields[1]), int(fields[2])
        except ValueError:
            raise GestureFormatError(
                f"line {lineno}: path header fields must be integers"
            ) from None
        if idx != expected_idx:
            raise GestureFormatError(
                f"line {lineno}: path blocks must appear in arrow order, "
                f"expected index {expected_idx}, got {idx}"
            )
        samples = []
        for _ in range(count):
            lineno, line = take("path sample line")
            samples.append(parse_point(lineno, line.split()))
        try:
            paths.append(SampledPath(points=np.array(samples, dtype=np.float64)))
        except ValueError as exc:
            raise GestureFormatError(f"path {idx}: {exc}") from exc

    if cursor != len(lines):
        extra_lineno = lines[cursor][0]
        raise GestureFormatError(f"line {extra_lineno}: trailing content")

    try:
        digraph = Digraph(vertex_count=vertex_count, arrows=tuple(arrows))
        return make_gesture(digraph, np.array(vertex_rows, dtype=np.float64), paths)
    except ValueError as exc:
        raise GestureFormatError(str(exc)) from exc
