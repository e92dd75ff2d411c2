"""Smoothness and timing proxies for a synthesized sequence."""

from __future__ import annotations

from dataclasses import asdict, dataclass, field
from typing import Optional, Sequence

import numpy as np

from .alignment import FrameTimeline
from .keypoints import MIN_CONFIDENCE
from .synth import KeyPoseEvent, OutputSequence


@dataclass
class EvalReport:
    jitter: float
    timing_errors: list[float] = field(default_factory=list)
    coverage: float = 1.0
    timing: str = "aligned"

    @property
    def max_timing_error(self) -> float:
        return max(self.timing_errors, default=0.0)

    def to_dict(self) -> dict:
        d = asdict(self)
        d["max_timing_error"] = self.max_timing_error
        return d


def jitter(seq: OutputSequence) -> float:
    """Largest per-keypoint displacement (px) between adjacent frames.

    Only points visible in both frames count.
    """
    pts = seq.points
    if len(pts) < 2:
        return 0.0
    a, b = pts[:-1], pts[1:]
    visible = (a[..., 2] >= MIN_CONFIDENCE) & (b[..., 2] >= MIN_CONFIDENCE)
    disp = np.linalg.norm(b[..., :2] - a[..., :2], axis=-1)
    disp = np.where(visible, disp, 0.0)
    return float(disp.max())


def eval_metrics(
    seq: OutputSequence,
    timeline: FrameTimeline,
    kept: Optional[Sequence[KeyPoseEvent]] = None,
    timing: str = "aligned",
) -> EvalReport:
    """Jitter, per-key-pose timing error, and the share of phones that got a key pose.

    Timing error is |key pose centre - phone midpoint * fps| in frames; it
    is only computed for kept key poses. Without ``kept`` every timeline
    event is assumed kept at its mid frame.
    """
    if seq.fps != timeline.fps:
        raise ValueError(f"sequence fps {seq.fps} != timeline fps {timeline.fps}")
    fps = timeline.fps
    errors = []
    if kept is None:
        pairs = [(ev.mid_frame, ev) for ev in timeline.events]
    else:
        pairs = [(k.center_frame, k.source) for k in kept if k.source is not None]
    for center, ev in pairs:
        if ev.start is not None and ev.end is not None:
            target = (ev.start + ev.end) / 2 * fps
        else:
            target = ev.mid_frame
        errors.append(abs(center - target))
    n_events = len(timeline.events)
    coverage = (len(pairs) / n_events) if n_events else 1.0
    return EvalReport(jitter(seq), errors, min(coverage, 1.0), timing)
