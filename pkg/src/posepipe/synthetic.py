"""Deterministic synthetic training corpora.

Real corpora are OpenPose output over recorded speech; these stand-ins
render a plausible upper body and face whose mouth opening follows the
aligned phones, so dictionary building and synthesis can be exercised
end to end without video.
"""

from __future__ import annotations

import zlib
from pathlib import Path

import numpy as np

from .alignment import AlignmentTrack, synthesize_durations
from .keypoints import N_BODY, N_FACE, N_POINTS, PoseSequence, write_keypoint_dir
from .lexicon import PhoneUnit, PronouncingDictionary, normalize_text, pinyin_to_units, transcribe
from .textgrid import serialize_textgrid

# words whose pronunciations cover all 39 ARPABET phones with the bundled lexicon
ENGLISH_WORDS = (
    "me she cat boy book chair sing yes measure think both quick brown fox jumps "
    "over the lazy dog hello world two five zero thousand"
)
MANDARIN_PINYIN = (
    "ni3 hao3 ma5 , wo3 shi4 zhong1 guo2 ren2 . ba1 po1 fa1 de2 ta1 le4 ge1 ke4 "
    "he2 ji1 qi1 xi1 zhi1 chi1 ri4 zi4 ci2 si4 , yi1 wu3 yu2 er4 an1 ai4 ou1 . "
    "bei3 bang1 peng2 jia1 jie3 jiao4 jiu3 jian4 jin1 jiang1 jing1 jiong3 , "
    "bu4 gua1 guai4 gui4 guan1 gun3 guang1 jue2 lv4 lve4 . "
    "ya1 yo1 ye4 yao4 you3 yan2 yin1 yang2 ying1 yong3 yue4 yuan2 yun2 , "
    "wa1 wai4 wei4 wan3 wen2 wang2 weng1 ."
)

_BODY_TEMPLATE = np.array(
    [
        (256, 150), (256, 230), (196, 232), (176, 320), (170, 400), (316, 232), (336, 320),
        (342, 400), (256, 400), (226, 400), (224, 480), (222, 500), (286, 400), (288, 480),
        (290, 500), (244, 138), (268, 138), (232, 142), (280, 142), (292, 505), (298, 506),
        (286, 506), (220, 505), (214, 506), (226, 506),
    ],
    dtype=float,
)


def _face_template() -> np.ndarray:
    pts = np.zeros((N_FACE, 2))
    cx, cy = 256.0, 150.0
    t = np.linspace(np.pi * 0.05, np.pi * 0.95, 17)
    pts[0:17] = np.c_[cx - 40 * np.cos(t), cy - 10 + 45 * np.sin(t)]
    pts[17:22] = np.c_[np.linspace(cx - 35, cx - 8, 5), cy - 32 + np.array([2, -1, -2, -1, 1])]
    pts[22:27] = np.c_[np.linspace(cx + 8, cx + 35, 5), cy - 32 + np.array([1, -1, -2, -1, 2])]
    pts[27:31] = np.c_[np.full(4, cx), np.linspace(cy - 22, cy + 2, 4)]
    pts[31:36] = np.c_[np.linspace(cx - 8, cx + 8, 5), cy + 6 + np.array([0, 1, 2, 1, 0])]
    for base, ox in ((36, cx - 20), (42, cx + 20)):
        a = np.linspace(0, 2 * np.pi, 6, endpoint=False)
        pts[base : base + 6] = np.c_[ox - 8 * np.cos(a), cy - 18 - 3 * np.sin(a)]
    pts[68] = (cx - 20, cy - 18)
    pts[69] = (cx + 20, cy - 18)
    return pts


_FACE_TEMPLATE = _face_template()
MOUTH_CENTER = np.array([256.0, 176.0])


def mouth_shape(opening: float, width: float) -> np.ndarray:
    """(20, 2) lip points: 12 outer, 8 inner, centred on MOUTH_CENTER."""
    a_out = np.linspace(0, 2 * np.pi, 12, endpoint=False)
    a_in = np.linspace(0, 2 * np.pi, 8, endpoint=False)
    outer = np.c_[-width * np.cos(a_out), (opening + 3) * np.sin(a_out)]
    inner = np.c_[-0.7 * width * np.cos(a_in), opening * np.sin(a_in)]
    return np.vstack([outer, inner]) + MOUTH_CENTER


def viseme(phone: PhoneUnit) -> tuple[float, float]:
    """Stable (opening, width) per phone; stress widens the opening a little."""
    if phone.is_silence:
        return 0.5, 16.0
    h = zlib.crc32(phone.base.encode())
    opening = 1.0 + (h % 97) / 97 * 11.0
    width = 12.0 + ((h >> 8) % 89) / 89 * 10.0
    if phone.stress is not None:
        opening += 1.5 * (phone.stress == 1) + 0.5 * (phone.stress == 2)
    return opening, width


def render_clip(track: AlignmentTrack, fps: float = 25.0, seed: int = 0) -> PoseSequence:
    """Keypoints for ``track``: the mouth follows the active phone, the head sways."""
    n = int(np.ceil(track.total_duration * fps - 1e-9))
    rng = np.random.default_rng(seed)
    pts = np.zeros((n, N_POINTS, 3))
    times = (np.arange(n) + 0.5) / fps
    phones = [PhoneUnit.silence()] * n
    for iv in track.intervals:
        for i in np.nonzero((times >= iv.start) & (times < iv.end))[0]:
            phones[i] = iv.phone
    phase = rng.uniform(0, 2 * np.pi)
    for i in range(n):
        sway = np.array([4.0 * np.sin(0.8 * times[i] + phase), 2.0 * np.cos(0.5 * times[i] + phase)])
        face = _FACE_TEMPLATE.copy()
        face[48:68] = mouth_shape(*viseme(phones[i]))
        pts[i, :N_BODY, :2] = _BODY_TEMPLATE + sway * 0.5
        pts[i, N_BODY:, :2] = face + sway
    pts[:, :, :2] += rng.normal(0, 0.3, size=(n, N_POINTS, 2))
    pts[:, :, 2] = np.clip(rng.uniform(0.6, 0.95, size=(n, 1)) + rng.normal(0, 0.02, size=(n, N_POINTS)), 0, 1)
    return PoseSequence(pts, fps)


def _pad(phones):
    return [PhoneUnit.silence()] + list(phones) + [PhoneUnit.silence()]


def english_corpus(lexicon: PronouncingDictionary, text: str = ENGLISH_WORDS, fps: float = 25.0, seed: int = 0):
    """One clip reading ``text`` with a pause between words."""
    phones = []
    for tok in normalize_text(text):
        phones += transcribe([tok], lexicon) + [PhoneUnit.silence()]
    track = synthesize_durations(_pad(phones), speaking_rate=0.8)
    return render_clip(track, fps, seed), track


def mandarin_corpus(pinyin: str = MANDARIN_PINYIN, fps: float = 25.0, seed: int = 1):
    track = synthesize_durations(_pad(pinyin_to_units(pinyin)), speaking_rate=0.8)
    return render_clip(track, fps, seed), track


def write_clip(seq: PoseSequence, track: AlignmentTrack, directory) -> tuple[Path, Path]:
    """Write ``<dir>/keypoints/*.json`` and ``<dir>/alignment.TextGrid``."""
    directory = Path(directory)
    kp = directory / "keypoints"
    write_keypoint_dir(seq, kp)
    tg = directory / "alignment.TextGrid"
    tg.write_text(serialize_textgrid(track), encoding="utf-8")
    return kp, tg
