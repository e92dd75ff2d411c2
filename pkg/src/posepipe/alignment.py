"""Phone timing: alignment tracks, a fallback duration model, and frame timelines."""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Optional

from .errors import ParseError
from .lexicon.phones import PhoneKind, PhoneUnit, parse_label

# values within this distance of an integer frame boundary snap onto it
FRAME_EPS = 1e-9


@dataclass(frozen=True)
class PhoneInterval:
    phone: PhoneUnit
    start: float
    end: float

    def __post_init__(self):
        if not (self.start >= 0 and self.end > self.start):
            raise ValueError(f"bad interval {self.phone} [{self.start}, {self.end}]")

    @property
    def duration(self) -> float:
        return self.end - self.start


@dataclass(frozen=True)
class AlignmentTrack:
    intervals: tuple[PhoneInterval, ...] = ()
    total_duration: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "intervals", tuple(self.intervals))
        _check_order(self.intervals)
        if self.intervals and self.intervals[-1].end > self.total_duration + FRAME_EPS:
            raise ValueError(
                f"last interval ends at {self.intervals[-1].end} past track duration {self.total_duration}"
            )

    def __len__(self):
        return len(self.intervals)

    @property
    def phones(self) -> list[PhoneUnit]:
        return [iv.phone for iv in self.intervals]

    def with_silence_gaps(self, min_gap: float = 0.0) -> "AlignmentTrack":
        """Copy with every gap longer than ``min_gap`` (including the edges) filled by silence."""
        out = []
        t = 0.0
        for iv in self.intervals:
            if iv.start - t > min_gap:
                out.append(PhoneInterval(PhoneUnit.silence(), t, iv.start))
            out.append(iv)
            t = iv.end
        if self.total_duration - t > min_gap:
            out.append(PhoneInterval(PhoneUnit.silence(), t, self.total_duration))
        return AlignmentTrack(tuple(out), self.total_duration)


def _check_order(intervals, where="interval"):
    for k in range(1, len(intervals)):
        prev, cur = intervals[k - 1], intervals[k]
        if cur.start < prev.end - FRAME_EPS:
            raise ValueError(
                f"{where} {k + 1}: starts at {cur.start} before previous end {prev.end}"
            )


@dataclass(frozen=True)
class FrameEvent:
    phone: PhoneUnit
    start_frame: int
    end_frame: int
    mid_frame: int
    # source times in seconds, kept for timing metrics
    start: Optional[float] = field(default=None, compare=False)
    end: Optional[float] = field(default=None, compare=False)

    def __post_init__(self):
        if not 0 <= self.start_frame <= self.mid_frame <= self.end_frame:
            raise ValueError(f"bad frame event {self}")


@dataclass(frozen=True)
class FrameTimeline:
    fps: float
    events: tuple[FrameEvent, ...] = ()
    total_frames: int = 0

    def __len__(self):
        return len(self.events)


def snap(x: float) -> float:
    r = round(x)
    return float(r) if abs(x - r) < FRAME_EPS else x


def round_half_up(x: float) -> int:
    return int(math.floor(snap(x + 0.5)))


def frame_count(duration: float, fps: float) -> int:
    """Number of output frames for an utterance: round(duration * fps)."""
    return round_half_up(duration * fps)


def to_frame_timeline(track: AlignmentTrack, fps: float) -> FrameTimeline:
    if fps <= 0:
        raise ValueError("fps must be positive")
    events = []
    for iv in track.intervals:
        start = int(math.floor(snap(iv.start * fps)))
        end = max(int(math.ceil(snap(iv.end * fps))) - 1, start)
        mid = round_half_up((iv.start + iv.end) / 2 * fps)
        mid = min(max(mid, start), end)
        events.append(FrameEvent(iv.phone, start, end, mid, iv.start, iv.end))
    return FrameTimeline(fps, tuple(events), frame_count(track.total_duration, fps))


@dataclass(frozen=True)
class DurationTable:
    """Base phone durations in seconds at speaking rate 1."""

    vowel: float = 0.120
    consonant: float = 0.070
    silence: float = 0.200

    def base(self, phone: PhoneUnit) -> float:
        if phone.is_silence:
            return self.silence
        if phone.is_vowel or phone.kind is PhoneKind.PINYIN_FINAL:
            return self.vowel
        return self.consonant


def synthesize_durations(
    phones: list[PhoneUnit], speaking_rate: float = 1.0, table: DurationTable = DurationTable()
) -> AlignmentTrack:
    """Contiguous intervals from t=0 using per-class base durations / speaking_rate.

    Pinyin finals count as vowels, initials as consonants.
    """
    if speaking_rate <= 0:
        raise ValueError("speaking_rate must be positive")
    intervals = []
    elapsed = 0.0
    for p in phones:
        start = elapsed
        elapsed += table.base(p)
        intervals.append(PhoneInterval(p, start / speaking_rate, elapsed / speaking_rate))
    return AlignmentTrack(tuple(intervals), elapsed / speaking_rate)


def parse_alignment_json(text: str) -> AlignmentTrack:
    """Parse ``{"duration": s, "phones": [{"p": label, "s": start, "e": end}, ...]}``."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc}") from None
    if not isinstance(doc, dict) or "duration" not in doc or "phones" not in doc:
        raise ParseError('alignment JSON needs "duration" and "phones"')
    duration = doc["duration"]
    if not _is_number(duration) or duration < 0:
        raise ParseError('"duration" must be a non-negative number')
    if not isinstance(doc["phones"], list):
        raise ParseError('"phones" must be a list')
    intervals = []
    for k, item in enumerate(doc["phones"], start=1):
        if not isinstance(item, dict) or set(item) - {"p", "s", "e"} or not {"p", "s", "e"} <= set(item):
            raise ParseError(f'phone {k}: expected keys "p", "s", "e"')
        if not isinstance(item["p"], str) or not _is_number(item["s"]) or not _is_number(item["e"]):
            raise ParseError(f"phone {k}: wrong value types")
        try:
            phone = parse_label(item["p"])
        except ParseError as exc:
            raise ParseError(f"phone {k}: {exc}") from None
        try:
            intervals.append(PhoneInterval(phone, float(item["s"]), float(item["e"])))
        except ValueError as exc:
            raise ParseError(f"phone {k}: {exc}") from None
    try:
        return AlignmentTrack(tuple(intervals), float(duration))
    except ValueError as exc:
        raise ParseError(str(exc).replace("interval", "phone", 1)) from None


def serialize_alignment_json(track: AlignmentTrack) -> str:
    return json.dumps(
        {
            "duration": track.total_duration,
            "phones": [{"p": iv.phone.label, "s": iv.start, "e": iv.end} for iv in track.intervals],
        }
    )


def _is_number(x) -> bool:
    return isinstance(x, (int, float)) and not isinstance(x, bool) and math.isfinite(x)
