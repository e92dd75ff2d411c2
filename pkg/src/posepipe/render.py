"""Stick-figure label maps (binary PPM) and pose-sequence JSON export."""

from __future__ import annotations

import json
import math
import re
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import ExportError, ParseError
from .keypoints import MIN_CONFIDENCE, N_BODY, N_FACE, N_POINTS
from .synth import OutputSequence, Tag

BODY_EDGES = (
    (0, 1), (1, 2), (2, 3), (3, 4), (1, 5), (5, 6), (6, 7), (1, 8),
    (8, 9), (9, 10), (10, 11), (8, 12), (12, 13), (13, 14),
    (0, 15), (15, 17), (0, 16), (16, 18),
    (14, 19), (19, 20), (14, 21), (11, 22), (22, 23), (11, 24),
)

# (first, last, closed) index runs over the 70-point face
FACE_RUNS = {
    "jaw": (0, 16, False),
    "right_brow": (17, 21, False),
    "left_brow": (22, 26, False),
    "nose_bridge": (27, 30, False),
    "nose_base": (31, 35, False),
    "right_eye": (36, 41, True),
    "left_eye": (42, 47, True),
    "outer_lip": (48, 59, True),
    "inner_lip": (60, 67, True),
}
LIP_RUNS = ("outer_lip", "inner_lip")

# label-map colors
BODY_COLOR = (255, 255, 255)
FACE_COLOR = (128, 128, 128)
LIP_COLOR = (255, 0, 0)
BACKGROUND = (0, 0, 0)


def _run_edges(first, last, closed):
    edges = [(i, i + 1) for i in range(first, last)]
    if closed:
        edges.append((last, first))
    return edges


@dataclass(frozen=True)
class SkeletonTopology:
    body_edges: tuple = BODY_EDGES
    face_runs: tuple = tuple(FACE_RUNS.items())

    def __post_init__(self):
        for a, b in self.body_edges:
            if not (0 <= a < N_BODY and 0 <= b < N_BODY):
                raise ValueError(f"body edge ({a}, {b}) out of range")
        for name, (first, last, _) in self.face_runs:
            if not (0 <= first < last < N_FACE):
                raise ValueError(f"face run {name} out of range")

    def colored_edges(self):
        """(row_a, row_b, rgb) over the stacked 95-point layout."""
        out = [(a, b, BODY_COLOR) for a, b in self.body_edges]
        for name, run in self.face_runs:
            color = LIP_COLOR if name in LIP_RUNS else FACE_COLOR
            out.extend((N_BODY + a, N_BODY + b, color) for a, b in _run_edges(*run))
        return out


DEFAULT_TOPOLOGY = SkeletonTopology()


def bresenham(x0: int, y0: int, x1: int, y1: int):
    dx, dy = abs(x1 - x0), -abs(y1 - y0)
    sx = 1 if x0 < x1 else -1
    sy = 1 if y0 < y1 else -1
    err = dx + dy
    while True:
        yield x0, y0
        if x0 == x1 and y0 == y1:
            return
        e2 = 2 * err
        if e2 >= dy:
            err += dy
            x0 += sx
        if e2 <= dx:
            err += dx
            y0 += sy


def _pixel(v: float, size: int) -> int:
    return min(max(int(math.floor(v + 0.5)), 0), size - 1)


def rasterize_frame(frame, topo: SkeletonTopology = DEFAULT_TOPOLOGY, canvas=(512, 512)) -> np.ndarray:
    """Draw 1-px skeleton edges into an (h, w, 3) uint8 image.

    Edges with an endpoint below the confidence threshold are skipped;
    coordinates are clamped to the canvas. Later edges overwrite earlier
    ones, so lips stay on top of the face contour.
    """
    w, h = canvas
    if w <= 0 or h <= 0:
        raise ValueError("canvas must be positive")
    pts = getattr(frame, "points", frame)
    img = np.zeros((h, w, 3), dtype=np.uint8)
    img[:] = BACKGROUND
    for a, b, color in topo.colored_edges():
        if pts[a, 2] < MIN_CONFIDENCE or pts[b, 2] < MIN_CONFIDENCE:
            continue
        x0, y0 = _pixel(pts[a, 0], w), _pixel(pts[a, 1], h)
        x1, y1 = _pixel(pts[b, 0], w), _pixel(pts[b, 1], h)
        for x, y in bresenham(x0, y0, x1, y1):
            img[y, x] = color
    return img


def ppm_bytes(img: np.ndarray) -> bytes:
    h, w, _ = img.shape
    return b"P6\n%d %d\n255\n" % (w, h) + np.ascontiguousarray(img, dtype=np.uint8).tobytes()


def read_ppm(data: bytes) -> np.ndarray:
    m = re.match(rb"P6\s+(\d+)\s+(\d+)\s+255\s", data)
    if not m:
        raise ParseError("not an 8-bit binary PPM")
    w, h = int(m.group(1)), int(m.group(2))
    return np.frombuffer(data[m.end() : m.end() + w * h * 3], dtype=np.uint8).reshape(h, w, 3)


def export_frames(seq: OutputSequence, directory, canvas=(512, 512), topo=DEFAULT_TOPOLOGY) -> int:
    """Write ``frame_%06d.ppm`` for every frame; returns the number written."""
    directory = Path(directory)
    try:
        directory.mkdir(parents=True, exist_ok=True)
    except OSError as exc:
        raise ExportError(directory, exc) from exc
    for i, pts in enumerate(seq.points):
        path = directory / f"frame_{i:06d}.ppm"
        try:
            path.write_bytes(ppm_bytes(rasterize_frame(pts, topo, canvas)))
        except OSError as exc:
            raise ExportError(path, exc) from exc
    return len(seq)


def export_pose_json(seq: OutputSequence) -> dict:
    """``{"fps": f, "frames": [{"body": [75], "face": [210], "tag": ...}]}``.

    Floats are written with Python's shortest round-trip repr, so parsing
    the document back is lossless.
    """
    return {
        "fps": seq.fps,
        "frames": [
            {"body": p[:N_BODY].ravel().tolist(), "face": p[N_BODY:].ravel().tolist(), "tag": t.value}
            for p, t in zip(seq.points, seq.tags)
        ],
    }


def parse_pose_json(doc) -> OutputSequence:
    if isinstance(doc, (str, bytes)):
        doc = json.loads(doc)
    try:
        frames = doc["frames"]
        pts = np.zeros((len(frames), N_POINTS, 3))
        for i, f in enumerate(frames):
            if len(f["body"]) != 3 * N_BODY or len(f["face"]) != 3 * N_FACE:
                raise ParseError(f"frame {i}: wrong keypoint count")
            pts[i, :N_BODY] = np.reshape(f["body"], (N_BODY, 3))
            pts[i, N_BODY:] = np.reshape(f["face"], (N_FACE, 3))
        return OutputSequence(pts, doc["fps"], tuple(Tag(f["tag"]) for f in frames))
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"bad pose document: {exc}") from None


def write_pose_json(seq: OutputSequence, path) -> None:
    path = Path(path)
    try:
        path.write_text(json.dumps(export_pose_json(seq)), encoding="utf-8")
    except OSError as exc:
        raise ExportError(path, exc) from exc
