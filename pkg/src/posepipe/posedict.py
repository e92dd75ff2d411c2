"""Phoneme-pose dictionary: one fixed-width keypoint snippet per phone unit."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import NamedTuple, Sequence

import numpy as np

from .alignment import AlignmentTrack, to_frame_timeline
from .errors import ConfigError, DataError, MissingPhoneError, ParseError
from .keypoints import N_BODY, N_FACE, N_POINTS, PoseSequence
from .lexicon.phones import PhoneUnit, parse_label

# order in which other stress variants stand in for a missing one
STRESS_FALLBACK = (1, 2, 0)


@dataclass(frozen=True)
class Provenance:
    clip: str
    center_frame: int
    confidence: float


@dataclass
class PhonemePoseDictionary:
    width: int
    fps: float
    snippets: dict[PhoneUnit, PoseSequence] = field(default_factory=dict)
    provenance: dict[PhoneUnit, Provenance] = field(default_factory=dict)

    def __post_init__(self):
        check_width(self.width)
        for unit, snip in self.snippets.items():
            if len(snip) != self.width or snip.fps != self.fps:
                raise ValueError(
                    f"snippet {unit} has {len(snip)} frames at {snip.fps} fps, "
                    f"expected {self.width} at {self.fps}"
                )

    def __contains__(self, unit):
        return unit in self.snippets

    def __len__(self):
        return len(self.snippets)

    @property
    def units(self) -> list[PhoneUnit]:
        return sorted(self.snippets, key=lambda u: u.sort_key)


def check_width(width):
    if not isinstance(width, (int, np.integer)) or width < 1 or width % 2 == 0:
        raise ConfigError(f"pose width must be an odd integer >= 1, got {width!r}")


class Candidate(NamedTuple):
    unit: PhoneUnit
    clip: str
    center: int
    span: int
    confidence: float
    points: np.ndarray

    def rank(self):
        # smaller is better
        if self.unit.is_silence:
            return (-self.span, -self.confidence, self.clip, self.center)
        return (-self.confidence, self.clip, self.center)


def _candidates(clip_id, seq: PoseSequence, track: AlignmentTrack, width: int):
    h = width // 2
    # gaps in the alignment count as silence
    filled = track.with_silence_gaps(min_gap=1.0 / seq.fps)
    timeline = to_frame_timeline(filled, seq.fps)
    n = len(seq)
    for ev in timeline.events:
        lo, hi = ev.mid_frame - h, ev.mid_frame + h
        if lo < 0 or hi >= n:
            continue
        window = seq.points[lo : hi + 1]
        yield Candidate(
            ev.phone, clip_id, ev.mid_frame, ev.end_frame - ev.start_frame + 1,
            float(window[:, :, 2].mean()), window,
        )


def build_dictionary(clips: Sequence, width: int = 7, fps: float = 25.0) -> PhonemePoseDictionary:
    """Build the dictionary from keypoint clips and their phone alignments.

    ``clips`` holds ``(sequence, track)`` or ``(clip_id, sequence, track)``
    tuples. Each phone occurrence yields a ``width``-frame window centred on
    its midpoint frame; windows that would leave the clip are dropped. The
    highest mean keypoint confidence wins (ties: smaller clip id, then
    earlier centre). Silence prefers the longest pause first.
    """
    check_width(width)
    best: dict[PhoneUnit, Candidate] = {}
    for index, clip in enumerate(clips):
        if len(clip) == 2:
            clip_id, (seq, track) = f"clip{index:04d}", clip
        else:
            clip_id, seq, track = clip
        if seq.fps != fps:
            raise ConfigError(f"clip {clip_id}: fps {seq.fps} does not match {fps}")
        # audio and video lengths routinely differ by up to one frame
        if track.total_duration > seq.duration + 1.0 / fps + 1e-9:
            raise DataError(
                f"clip {clip_id}: alignment lasts {track.total_duration:.3f}s "
                f"but video only {seq.duration:.3f}s"
            )
        for cand in _candidates(clip_id, seq, track, width):
            cur = best.get(cand.unit)
            if cur is None or cand.rank() < cur.rank():
                best[cand.unit] = cand
    if best and PhoneUnit.silence() not in best:
        raise DataError("no silence long enough to extract a silence snippet")
    snippets = {u: PoseSequence(c.points.copy(), fps) for u, c in best.items()}
    provenance = {u: Provenance(c.clip, c.center, c.confidence) for u, c in best.items()}
    return PhonemePoseDictionary(width, fps, snippets, provenance)


class Lookup(NamedTuple):
    snippet: PoseSequence
    unit: PhoneUnit  # the key actually used
    fallback: bool


def lookup(d: PhonemePoseDictionary, phone: PhoneUnit) -> Lookup:
    """Exact match, else another stress level of the same vowel (1, then 2, then 0)."""
    if phone in d.snippets:
        return Lookup(d.snippets[phone], phone, False)
    if phone.is_vowel:
        for s in STRESS_FALLBACK:
            alt = phone.with_stress(s)
            if alt != phone and alt in d.snippets:
                return Lookup(d.snippets[alt], alt, True)
    raise MissingPhoneError(phone)


@dataclass(frozen=True)
class CoverageReport:
    present: tuple[PhoneUnit, ...]
    missing: tuple[PhoneUnit, ...]

    @property
    def coverage(self) -> float:
        total = len(self.present) + len(self.missing)
        return len(self.present) / total if total else 0.0

    def format(self) -> str:
        lines = [f"coverage: {len(self.present)}/{len(self.present) + len(self.missing)} = {self.coverage:.3f}"]
        if self.missing:
            lines.append("missing: " + " ".join(u.label for u in self.missing))
        return "\n".join(lines)


def coverage_report(d: PhonemePoseDictionary, inventory: Sequence[PhoneUnit], exact: bool = False) -> CoverageReport:
    """Which inventory units the dictionary can serve.

    By default a vowel counts as present when any of its stress variants is
    stored (what ``lookup`` will return); ``exact=True`` requires the key itself.
    """
    present, missing = [], []
    for unit in inventory:
        if exact:
            ok = unit in d.snippets
        else:
            try:
                lookup(d, unit)
                ok = True
            except MissingPhoneError:
                ok = False
        (present if ok else missing).append(unit)
    return CoverageReport(tuple(present), tuple(missing))


def dictionary_to_json(d: PhonemePoseDictionary) -> str:
    snippets = {}
    for unit in d.units:
        pts = d.snippets[unit].points
        snippets[unit.label] = [
            {"body": f[:N_BODY].ravel().tolist(), "face": f[N_BODY:].ravel().tolist()} for f in pts
        ]
    provenance = {
        u.label: {"clip": p.clip, "center_frame": p.center_frame, "confidence": p.confidence}
        for u, p in sorted(d.provenance.items(), key=lambda kv: kv[0].sort_key)
    }
    return json.dumps({"width": d.width, "fps": d.fps, "snippets": snippets, "provenance": provenance})


def dictionary_from_json(text: str) -> PhonemePoseDictionary:
    try:
        doc = json.loads(text)
        width, fps = doc["width"], doc["fps"]
        snippets = {}
        for label, frames in doc["snippets"].items():
            pts = np.array(
                [np.concatenate([np.reshape(f["body"], (N_BODY, 3)), np.reshape(f["face"], (N_FACE, 3))]) for f in frames],
                dtype=float,
            ).reshape(-1, N_POINTS, 3)
            snippets[parse_label(label)] = PoseSequence(pts, fps)
        provenance = {
            parse_label(label): Provenance(p["clip"], int(p["center_frame"]), float(p["confidence"]))
            for label, p in doc.get("provenance", {}).items()
        }
        return PhonemePoseDictionary(width, fps, snippets, provenance)
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"bad dictionary document: {exc}") from None
