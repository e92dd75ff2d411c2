import math
import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from posepipe.alignment import (
    AlignmentTrack,
    PhoneInterval,
    parse_alignment_json,
    serialize_alignment_json,
    synthesize_durations,
    to_frame_timeline,
)
from posepipe.errors import ParseError
from posepipe.lexicon import PhoneUnit
from posepipe.textgrid import parse_textgrid, serialize_textgrid

M = PhoneUnit.arpabet("M")
IY1 = PhoneUnit.arpabet("IY", 1)
SIL = PhoneUnit.silence()


# TextGrid -------------------------------------------------------------------


def _single(label, xmin, xmax, tier_xmax=None):
    track = AlignmentTrack((PhoneInterval(SIL, xmin, xmax),), tier_xmax or xmax)
    text = serialize_textgrid(track)
    return text.replace('text = ""', f'text = "{label}"')


def test_textgrid_single_interval():
    track = parse_textgrid(_single("IY1", 0.0, 0.28))
    assert track.intervals == (PhoneInterval(IY1, 0.0, 0.28),)
    assert track.total_duration == 0.28


def test_textgrid_empty_label_is_silence():
    track = parse_textgrid(_single("", 0.0, 0.28))
    assert track.intervals[0].phone.is_silence


def test_textgrid_bad_interval(fixtures):
    with pytest.raises(ParseError, match=r"interval 3: xmax<xmin"):
        parse_textgrid((fixtures / "bad_interval.TextGrid").read_text(), "phones")


def test_textgrid_missing_tier(fixtures):
    with pytest.raises(ParseError, match="no tier named 'segments'"):
        parse_textgrid((fixtures / "me.TextGrid").read_text(), "segments")


def test_textgrid_short_format_rejected(fixtures):
    with pytest.raises(ParseError, match="short format"):
        parse_textgrid((fixtures / "short_format.TextGrid").read_text())


def test_textgrid_unsorted():
    text = serialize_textgrid(
        AlignmentTrack((PhoneInterval(M, 0.0, 0.2), PhoneInterval(IY1, 0.2, 0.4)), 0.5)
    )
    text = text.replace("xmin = 0.2\n", "xmin = 0.1\n")
    with pytest.raises(ParseError, match="interval 2: unsorted"):
        parse_textgrid(text)


def test_praat_style_multi_tier(fixtures):
    track = parse_textgrid((fixtures / "praat_two_tiers.TextGrid").read_text(), "phones")
    assert [iv.phone.label for iv in track.intervals] == ["SH", "IY1", "sil"]
    assert track.total_duration == 0.5


@pytest.mark.parametrize("name", ["me.TextGrid", "praat_two_tiers.TextGrid"])
def test_textgrid_round_trip_on_fixtures(fixtures, name):
    track = parse_textgrid((fixtures / name).read_text())
    again = parse_textgrid(serialize_textgrid(track))
    assert again.intervals == track.intervals
    assert again.total_duration == track.total_duration


def test_textgrid_and_json_fixtures_agree(fixtures):
    a = parse_textgrid((fixtures / "me.TextGrid").read_text())
    b = parse_alignment_json((fixtures / "me.json").read_text())
    assert a == b


# JSON -----------------------------------------------------------------------


def test_json_one_interval():
    track = parse_alignment_json('{"duration":1.0,"phones":[{"p":"M","s":0.0,"e":0.1}]}')
    assert track.intervals == (PhoneInterval(M, 0.0, 0.1),)


def test_json_empty_phones():
    track = parse_alignment_json('{"duration":1.0,"phones":[]}')
    assert len(track) == 0 and track.total_duration == 1.0


def test_json_overlap():
    with pytest.raises(ParseError, match="phone 2"):
        parse_alignment_json(
            '{"duration":1.0,"phones":[{"p":"M","s":0.0,"e":0.3},{"p":"IY1","s":0.2,"e":0.5}]}'
        )


@pytest.mark.parametrize(
    "doc",
    [
        "[]",
        '{"phones": []}',
        '{"duration": "1", "phones": []}',
        '{"duration": 1, "phones": [{"p": "M", "s": 0}]}',
        '{"duration": 1, "phones": [{"p": "M", "s": 0.5, "e": 0.2}]}',
        '{"duration": 1, "phones": [{"p": "XX", "s": 0, "e": 0.2}]}',
        "{not json",
    ],
)
def test_json_schema_violations(doc):
    with pytest.raises(ParseError):
        parse_alignment_json(doc)


def test_json_round_trip(fixtures):
    track = parse_alignment_json((fixtures / "me.json").read_text())
    assert parse_alignment_json(serialize_alignment_json(track)) == track


# duration model ---------------------------------------------------------------


def test_durations_empty():
    track = synthesize_durations([])
    assert len(track) == 0 and track.total_duration == 0


def test_durations_default_table():
    track = synthesize_durations([M, IY1])
    (m, iy) = track.intervals
    assert (m.phone, m.start, m.end) == (M, 0.0, pytest.approx(0.07, abs=1e-12))
    assert (iy.phone, iy.start, iy.end) == (IY1, pytest.approx(0.07, abs=1e-12), pytest.approx(0.19, abs=1e-12))


def test_durations_rate_two_halves():
    phones = [SIL, M, IY1, SIL]
    a, b = synthesize_durations(phones, 1.0), synthesize_durations(phones, 2.0)
    for x, y in zip(a.intervals, b.intervals):
        assert y.start == x.start / 2 and y.end == x.end / 2


@given(st.floats(min_value=0.1, max_value=10))
def test_durations_total_scales(rate):
    phones = [SIL, M, IY1, PhoneUnit.initial("zh"), PhoneUnit.final("uang"), SIL]
    base = synthesize_durations(phones).total_duration
    assert synthesize_durations(phones, rate).total_duration == pytest.approx(base / rate, rel=1e-12)


# frame timeline -----------------------------------------------------------------


def oracle_frames(start, end, fps):
    """Brute force over frames with exact rationals: frame i covers [i/fps, (i+1)/fps)."""
    s, e, f = Fraction(start).limit_denominator(10**6), Fraction(end).limit_denominator(10**6), Fraction(fps)
    covered = [i for i in range(0, int(e * f) + 2) if Fraction(i) / f < e and Fraction(i + 1) / f > s]
    first, last = min(covered), max(covered)
    mid = math.floor((s + e) / 2 * f + Fraction(1, 2))
    return first, last, min(max(mid, first), last)


def test_timeline_vowel_example():
    tl = to_frame_timeline(AlignmentTrack((PhoneInterval(IY1, 0.0, 0.2),), 0.2), 25)
    ev = tl.events[0]
    assert (ev.start_frame, ev.end_frame, ev.mid_frame) == (0, 4, 3)


def test_timeline_clamp_example():
    tl = to_frame_timeline(AlignmentTrack((PhoneInterval(M, 1.0, 1.04),), 1.04), 25)
    ev = tl.events[0]
    assert (ev.start_frame, ev.end_frame, ev.mid_frame) == (25, 25, 25)
    assert (ev.start_frame, ev.end_frame, ev.mid_frame) == oracle_frames(1.0, 1.04, 25)


def test_timeline_empty():
    tl = to_frame_timeline(AlignmentTrack(), 25)
    assert tl.events == () and tl.total_frames == 0


def _random_track(rng, n=12, grid=0.01):
    t = 0.0
    ivs = []
    for _ in range(n):
        t += rng.randint(0, 5) * grid
        d = rng.randint(1, 30) * grid
        ivs.append(PhoneInterval(rng.choice([M, IY1, SIL]), round(t, 6), round(t + d, 6)))
        t = round(t + d, 6)
    return AlignmentTrack(tuple(ivs), t + rng.randint(0, 10) * grid)


def test_timeline_matches_brute_force():
    rng = random.Random(3)
    for _ in range(300):
        track = _random_track(rng)
        fps = rng.choice([25, 30, 24, 50])
        tl = to_frame_timeline(track, fps)
        for iv, ev in zip(track.intervals, tl.events):
            assert (ev.start_frame, ev.end_frame, ev.mid_frame) == oracle_frames(iv.start, iv.end, fps)


def test_timeline_properties():
    rng = random.Random(4)
    for _ in range(300):
        track = _random_track(rng)
        tl = to_frame_timeline(track, 25)
        spans = sum(ev.end_frame - ev.start_frame + 1 for ev in tl.events)
        assert spans <= math.ceil(track.total_duration * 25) + len(tl.events)
        starts = [ev.start_frame for ev in tl.events]
        assert starts == sorted(starts)
        for a, b in zip(tl.events, tl.events[1:]):
            assert b.start_frame >= a.end_frame  # at most one shared boundary frame


def test_silence_gap_filling():
    track = AlignmentTrack((PhoneInterval(M, 0.1, 0.2), PhoneInterval(IY1, 0.2005, 0.4)), 0.6)
    filled = track.with_silence_gaps(min_gap=0.04)
    assert [iv.phone.label for iv in filled.intervals] == ["sil", "M", "IY1", "sil"]
    assert filled.intervals[-1].end == 0.6
