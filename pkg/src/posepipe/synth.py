"""Pose sequence synthesis: key pose placement, skipping, interpolation, smoothing."""

from __future__ import annotations

import enum
import json
import logging
from contextlib import contextmanager
from dataclasses import asdict, dataclass, field
from typing import Optional

import numpy as np

from .alignment import (
    AlignmentTrack,
    DurationTable,
    FrameEvent,
    FrameTimeline,
    frame_count,
    synthesize_durations,
    to_frame_timeline,
)
from .errors import ConfigError, InvariantError, PosePipeError
from .keypoints import MOUTH, N_POINTS, KeypointFrame, PoseSequence
from .lexicon import PhoneUnit, PronouncingDictionary, normalize_text, pinyin_to_units, transcribe
from .posedict import PhonemePoseDictionary, lookup

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class SynthConfig:
    pose_width: int = 7
    min_key_pose_distance: int = 4
    smooth_window: int = 9
    fps: float = 25.0

    def __post_init__(self):
        for name in ("pose_width", "smooth_window"):
            v = getattr(self, name)
            if not isinstance(v, int) or isinstance(v, bool) or v < 1 or v % 2 == 0:
                raise ConfigError(f"{name} must be an odd integer >= 1, got {v!r}")
        v = self.min_key_pose_distance
        if not isinstance(v, int) or isinstance(v, bool) or v < 0:
            raise ConfigError(f"min_key_pose_distance must be an integer >= 0, got {v!r}")
        if not isinstance(self.fps, (int, float)) or isinstance(self.fps, bool) or not self.fps > 0:
            raise ConfigError(f"fps must be positive, got {self.fps!r}")

    @classmethod
    def from_dict(cls, doc: dict) -> "SynthConfig":
        unknown = set(doc) - set(cls.__dataclass_fields__)
        if unknown:
            raise ConfigError(f"unknown config keys: {sorted(unknown)}")
        return cls(**doc)

    @classmethod
    def from_json(cls, text: str) -> "SynthConfig":
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ConfigError(f"config is not valid JSON: {exc}") from None
        if not isinstance(doc, dict):
            raise ConfigError("config must be a JSON object")
        return cls.from_dict(doc)

    def to_json(self) -> str:
        return json.dumps(asdict(self))


class Tag(str, enum.Enum):
    COPIED = "Copied"
    INTERPOLATED = "Interpolated"
    HELD = "Held"


@dataclass(frozen=True, eq=False)
class KeyPoseEvent:
    phone: PhoneUnit
    snippet: PoseSequence
    center_frame: int
    start_frame: int
    end_frame: int
    offset: int = 0  # snippet index shown at start_frame (>0 when trimmed at the start)
    unit: Optional[PhoneUnit] = None  # dictionary key used, differs on stress fallback
    source: Optional[FrameEvent] = None

    @property
    def frames(self) -> np.ndarray:
        return self.snippet.points[self.offset : self.offset + self.end_frame - self.start_frame + 1]

    @property
    def fallback(self) -> bool:
        return self.unit is not None and self.unit != self.phone


@dataclass(eq=False)
class OutputSequence:
    points: np.ndarray  # (N, 95, 3)
    fps: float
    tags: tuple[Tag, ...] = ()

    def __post_init__(self):
        self.points = np.asarray(self.points, dtype=float).reshape(-1, N_POINTS, 3)
        self.tags = tuple(Tag(t) for t in self.tags)
        if len(self.tags) != len(self.points):
            raise ValueError("every frame needs a tag")

    def __len__(self):
        return self.points.shape[0]

    @property
    def frames(self) -> list[KeypointFrame]:
        return [KeypointFrame(p) for p in self.points]

    def __eq__(self, other):
        return (
            isinstance(other, OutputSequence)
            and self.fps == other.fps
            and self.tags == other.tags
            and np.array_equal(self.points, other.points)
        )


def place_key_poses(
    timeline: FrameTimeline,
    dictionary: PhonemePoseDictionary,
    cfg: SynthConfig = SynthConfig(),
    total_frames: Optional[int] = None,
) -> list[KeyPoseEvent]:
    """Centre each phone's snippet on its mid frame, trimming at the sequence edges."""
    if dictionary.width != cfg.pose_width:
        raise ConfigError(f"dictionary width {dictionary.width} != pose_width {cfg.pose_width}")
    if dictionary.fps != cfg.fps:
        raise ConfigError(f"dictionary fps {dictionary.fps} != config fps {cfg.fps}")
    n = timeline.total_frames if total_frames is None else total_frames
    h = cfg.pose_width // 2
    events = []
    for ev in timeline.events:
        hit = lookup(dictionary, ev.phone)
        c = ev.mid_frame
        start, end = max(c - h, 0), min(c + h, n - 1)
        if start > end:
            log.debug("key pose %s at frame %d lies outside %d frames", ev.phone, c, n)
            continue
        events.append(KeyPoseEvent(ev.phone, hit.snippet, c, start, end, start - (c - h), hit.unit, ev))
    events.sort(key=lambda e: e.center_frame)
    return events


def block_gap(kept: KeyPoseEvent, nxt: KeyPoseEvent) -> int:
    """Empty frames strictly between two blocks (negative when they overlap)."""
    return nxt.start_frame - kept.end_frame - 1


def select_key_poses(events: list[KeyPoseEvent], min_dist: int) -> list[KeyPoseEvent]:
    """Drop key poses that crowd the previous kept one.

    Scanning left to right, the next block is kept when at least
    ``min_dist`` empty frames separate it from the last kept block;
    otherwise it is skipped and the one after it is tried.
    """
    kept: list[KeyPoseEvent] = []
    for ev in events:
        if not kept or block_gap(kept[-1], ev) >= min_dist:
            kept.append(ev)
    return kept


def interpolate_gaps(events: list[KeyPoseEvent], total_frames: int, fps: float = 25.0) -> OutputSequence:
    """Copy key pose blocks and fill the frames between them.

    Between key frame ``a`` (pose P) and ``b`` (pose Q), frame ``f`` gets
    ``((b - f) * P + (f - a) * Q) / (b - a)``. Frames before the first block
    and after the last hold the nearest block edge.
    """
    n = total_frames
    out = np.zeros((n, N_POINTS, 3))
    tags: list[Optional[Tag]] = [None] * n
    if n == 0:
        return OutputSequence(out, fps, ())
    if not events:
        raise InvariantError(f"no key poses to fill {n} frames")
    for prev, ev in zip(events, events[1:]):
        if ev.start_frame <= prev.end_frame:
            raise InvariantError(
                f"overlapping key poses {prev.phone}@{prev.start_frame}-{prev.end_frame} "
                f"and {ev.phone}@{ev.start_frame}-{ev.end_frame}"
            )
    for ev in events:
        out[ev.start_frame : ev.end_frame + 1] = ev.frames
        tags[ev.start_frame : ev.end_frame + 1] = [Tag.COPIED] * (ev.end_frame - ev.start_frame + 1)

    for prev, ev in zip(events, events[1:]):
        a, b = prev.end_frame, ev.start_frame
        if b - a < 2:
            continue
        p, q = out[a], out[b]
        f = np.arange(a + 1, b, dtype=float)[:, None, None]
        seg = ((b - f) * p + (f - a) * q) / (b - a)
        # guard against rounding drifting outside the [P, Q] envelope
        out[a + 1 : b] = np.clip(seg, np.minimum(p, q), np.maximum(p, q))
        tags[a + 1 : b] = [Tag.INTERPOLATED] * (b - a - 1)

    first, last = events[0], events[-1]
    out[: first.start_frame] = out[first.start_frame]
    tags[: first.start_frame] = [Tag.HELD] * first.start_frame
    out[last.end_frame + 1 :] = out[last.end_frame]
    tags[last.end_frame + 1 :] = [Tag.HELD] * (n - last.end_frame - 1)
    return OutputSequence(out, fps, tuple(tags))


def triangular_weights(window: int) -> np.ndarray:
    """Unnormalized weights h+1-|d| for d in -h..h, h = window // 2."""
    h = window // 2
    return (h + 1 - np.abs(np.arange(-h, h + 1))).astype(float)


def smooth_array(x: np.ndarray, window: int) -> np.ndarray:
    """Triangular-kernel moving average along axis 0.

    Near the ends the window is truncated and the remaining weights are
    renormalized. Computed as x + weighted mean of differences so that
    constant signals come back bit-identical.
    """
    x = np.asarray(x, dtype=float)
    n = x.shape[0]
    h = window // 2
    w = triangular_weights(window)
    acc = np.zeros_like(x)
    norm = np.zeros(n)
    for d in range(-h, h + 1):
        lo, hi = max(0, -d), min(n, n - d)
        if lo >= hi:
            continue
        wd = w[d + h]
        norm[lo:hi] += wd
        if d:
            acc[lo:hi] += wd * (x[lo + d : hi + d] - x[lo:hi])
    return x + acc / norm.reshape((n,) + (1,) * (x.ndim - 1))


def smooth_sequence(seq: OutputSequence, cfg: SynthConfig = SynthConfig()) -> OutputSequence:
    """Smooth everything except the mouth shape.

    Body and non-mouth face points (confidences included) go through the
    triangular filter. The mouth is split into its centroid and per-point
    offsets; only the centroid track is smoothed and the offsets are added
    back, so lip shapes survive untouched. Mouth confidences are kept.
    """
    if len(seq) == 0:
        raise ValueError("cannot smooth an empty sequence")
    window = cfg.smooth_window
    if window < 1 or window % 2 == 0:
        raise ConfigError(f"smooth_window must be odd, got {window}")
    pts = seq.points
    mouth = pts[:, MOUTH, :2]
    center = mouth.mean(axis=1)
    offsets = mouth - center[:, None, :]

    out = smooth_array(pts, window)
    center_s = smooth_array(center, window)
    out[:, MOUTH, :2] = center_s[:, None, :] + offsets
    out[:, MOUTH, 2] = pts[:, MOUTH, 2]
    return OutputSequence(out, seq.fps, seq.tags)


@contextmanager
def stage(name: str):
    try:
        yield
    except PosePipeError as exc:
        if exc.stage is None:
            exc.stage = name
        raise


@dataclass
class SynthesisRun:
    sequence: OutputSequence
    unsmoothed: OutputSequence
    timeline: FrameTimeline
    placed: list[KeyPoseEvent] = field(default_factory=list)
    kept: list[KeyPoseEvent] = field(default_factory=list)
    timing: str = "aligned"  # or "model-based"


def _non_silent(phones):
    return [p for p in phones if not p.is_silence]


def run_pipeline(
    dictionary: PhonemePoseDictionary,
    cfg: SynthConfig = SynthConfig(),
    *,
    text: Optional[str] = None,
    pinyin: Optional[str] = None,
    lexicon: Optional[PronouncingDictionary] = None,
    alignment: Optional[AlignmentTrack] = None,
    speaking_rate: float = 1.0,
    durations: DurationTable = DurationTable(),
) -> SynthesisRun:
    """Text (or pinyin) to smoothed pose sequence, keeping the intermediate products.

    Without ``alignment`` the phone timing comes from the duration model.
    With it, the aligned phones drive synthesis and the text, if given, is
    only cross-checked.
    """
    if text is not None and pinyin is not None:
        raise ValueError("give either text or pinyin, not both")
    phones = None
    with stage("lexicon"):
        if pinyin is not None:
            phones = pinyin_to_units(pinyin)
        elif text is not None:
            if lexicon is None:
                raise ValueError("English text needs a pronouncing dictionary")
            phones = transcribe(normalize_text(text), lexicon)

    with stage("alignment"):
        if alignment is not None:
            track, timing = alignment, "aligned"
            if phones is not None and _non_silent(phones) != _non_silent(track.phones):
                log.warning("aligned phones differ from the transcription; using the alignment")
        else:
            if phones is None:
                raise ValueError("need text, pinyin or an alignment")
            # an utterance with nothing to say is a pause
            track = synthesize_durations(phones or [PhoneUnit.silence()], speaking_rate, durations)
            timing = "model-based"
        min_gap = 1.0 / cfg.fps if track.intervals else 0.0
        track = track.with_silence_gaps(min_gap)
        timeline = to_frame_timeline(track, cfg.fps)
        n = frame_count(track.total_duration, cfg.fps)

    with stage("lookup"):
        placed = place_key_poses(timeline, dictionary, cfg, n)

    with stage("synth"):
        kept = select_key_poses(placed, cfg.min_key_pose_distance)
        raw = interpolate_gaps(kept, n, cfg.fps)
        seq = smooth_sequence(raw, cfg) if n else raw
    return SynthesisRun(seq, raw, timeline, placed, kept, timing)


def synthesize(dictionary: PhonemePoseDictionary, cfg: SynthConfig = SynthConfig(), **kwargs) -> OutputSequence:
    return run_pipeline(dictionary, cfg, **kwargs).sequence
