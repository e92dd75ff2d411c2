"""2D keypoint frames (OpenPose BODY_25 + 70-point face) and OpenPose JSON I/O.

A frame is stored as one (95, 3) float array: rows 0..24 are body points,
rows 25..94 face points, columns are x, y, confidence. Sequences stack
frames into (T, 95, 3).
"""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import ParseError

log = logging.getLogger(__name__)

N_BODY = 25
N_FACE = 70
N_POINTS = N_BODY + N_FACE
BODY = slice(0, N_BODY)
FACE = slice(N_BODY, N_POINTS)
# outer + inner lip of the 70-point face model, as rows of the stacked array
MOUTH_FACE_INDICES = range(48, 68)
MOUTH = slice(N_BODY + 48, N_BODY + 68)

# renderers treat anything below this confidence as missing
MIN_CONFIDENCE = 0.05


@dataclass(frozen=True, eq=False)
class KeypointFrame:
    points: np.ndarray  # (95, 3)

    def __post_init__(self):
        pts = np.asarray(self.points, dtype=float)
        if pts.shape != (N_POINTS, 3):
            raise ValueError(f"expected ({N_POINTS}, 3) points, got {pts.shape}")
        if not np.all(np.isfinite(pts)):
            raise ValueError("keypoint values must be finite")
        object.__setattr__(self, "points", pts)

    @classmethod
    def from_parts(cls, body, face) -> "KeypointFrame":
        return cls(np.concatenate([np.reshape(body, (N_BODY, 3)), np.reshape(face, (N_FACE, 3))]))

    @property
    def body(self) -> np.ndarray:
        return self.points[BODY]

    @property
    def face(self) -> np.ndarray:
        return self.points[FACE]

    def __eq__(self, other):
        return isinstance(other, KeypointFrame) and np.array_equal(self.points, other.points)


@dataclass(eq=False)
class PoseSequence:
    points: np.ndarray  # (T, 95, 3)
    fps: float

    def __post_init__(self):
        pts = np.asarray(self.points, dtype=float)
        if pts.ndim != 3 or pts.shape[1:] != (N_POINTS, 3):
            raise ValueError(f"expected (T, {N_POINTS}, 3) points, got {pts.shape}")
        self.points = pts

    @classmethod
    def from_frames(cls, frames: list[KeypointFrame], fps: float) -> "PoseSequence":
        if not frames:
            return cls(np.zeros((0, N_POINTS, 3)), fps)
        return cls(np.stack([f.points for f in frames]), fps)

    def __len__(self):
        return self.points.shape[0]

    @property
    def frames(self) -> list[KeypointFrame]:
        return [KeypointFrame(p) for p in self.points]

    @property
    def duration(self) -> float:
        return len(self) / self.fps

    def mean_confidence(self, start=0, stop=None) -> float:
        return float(self.points[start:stop, :, 2].mean())

    def __eq__(self, other):
        return (
            isinstance(other, PoseSequence)
            and self.fps == other.fps
            and np.array_equal(self.points, other.points)
        )


def _flat_triples(person: dict, key: str, n: int) -> np.ndarray:
    values = person.get(key)
    if not isinstance(values, list) or len(values) != 3 * n:
        got = "missing" if values is None else f"{len(values) if isinstance(values, list) else type(values).__name__}"
        raise ParseError(f"{key}: expected {3 * n} numbers, got {got}")
    try:
        return np.asarray(values, dtype=float).reshape(n, 3)
    except (TypeError, ValueError):
        raise ParseError(f"{key}: non-numeric values") from None


def parse_openpose_frame(text: str) -> KeypointFrame:
    """Parse one OpenPose per-frame JSON document; the first person is used."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc}") from None
    people = doc.get("people") if isinstance(doc, dict) else None
    if not isinstance(people, list):
        raise ParseError('missing "people" array')
    if not people:
        raise ParseError("no person detected")
    if len(people) > 1:
        log.warning("%d people detected, using the first", len(people))
    body = _flat_triples(people[0], "pose_keypoints_2d", N_BODY)
    face = _flat_triples(people[0], "face_keypoints_2d", N_FACE)
    for name, arr in (("pose_keypoints_2d", body), ("face_keypoints_2d", face)):
        c = arr[:, 2]
        if np.any((c < 0) | (c > 1)):
            raise ParseError(f"{name}: confidence outside [0, 1]")
    try:
        return KeypointFrame.from_parts(body, face)
    except ValueError as exc:
        raise ParseError(str(exc)) from None


def serialize_openpose_frame(frame: KeypointFrame) -> str:
    return json.dumps(
        {
            "version": 1.3,
            "people": [
                {
                    "pose_keypoints_2d": frame.body.ravel().tolist(),
                    "face_keypoints_2d": frame.face.ravel().tolist(),
                }
            ],
        }
    )


def load_keypoint_dir(path, fps: float) -> PoseSequence:
    """Read every ``*.json`` in ``path`` in filename order."""
    path = Path(path)
    files = sorted(path.glob("*.json"))
    if not files:
        raise FileNotFoundError(f"no keypoint JSON files in {path}")
    frames = []
    for f in files:
        try:
            frames.append(parse_openpose_frame(f.read_text(encoding="utf-8")))
        except ParseError as exc:
            raise ParseError(f"{f}: {exc}") from None
    return PoseSequence.from_frames(frames, fps)


def write_keypoint_dir(seq: PoseSequence, path, prefix: str = "frame") -> list[Path]:
    path = Path(path)
    path.mkdir(parents=True, exist_ok=True)
    out = []
    for i, frame in enumerate(seq.frames):
        f = path / f"{prefix}_{i:012d}_keypoints.json"
        f.write_text(serialize_openpose_frame(frame), encoding="utf-8")
        out.append(f)
    return out
