import random

import numpy as np

from posepipe.alignment import AlignmentTrack, PhoneInterval, to_frame_timeline
from posepipe.keypoints import N_POINTS
from posepipe.lexicon import PhoneUnit
from posepipe.metrics import eval_metrics, jitter
from posepipe.synth import OutputSequence, Tag, run_pipeline, smooth_sequence


def test_constant_sequence_has_no_jitter():
    seq = OutputSequence(np.ones((10, N_POINTS, 3)), 25.0, (Tag.HELD,) * 10)
    assert jitter(seq) == 0.0


def test_jitter_ignores_invisible_points():
    pts = np.ones((2, N_POINTS, 3))
    pts[1, 0, :2] = 100.0
    pts[1, 0, 2] = 0.0
    assert jitter(OutputSequence(pts, 25.0, (Tag.HELD,) * 2)) == 0.0
    pts[1, 0, 2] = 1.0
    assert jitter(OutputSequence(pts, 25.0, (Tag.HELD,) * 2)) == np.hypot(99, 99)


def test_report_on_pipeline_output(english_dict, lexicon):
    run = run_pipeline(english_dict, text="the quick brown fox", lexicon=lexicon)
    rep = eval_metrics(run.sequence, run.timeline, run.kept)
    assert rep.jitter == jitter(run.sequence)
    assert rep.coverage == len(run.kept) / len(run.timeline.events)
    assert len(rep.timing_errors) == len(run.kept)


def test_smoothing_lowers_body_jitter_on_a_step():
    pts = np.ones((30, N_POINTS, 3))
    pts[15:, :, :2] = 50.0
    seq = OutputSequence(pts, 25.0, (Tag.COPIED,) * 30)
    smoothed = smooth_sequence(seq)
    assert jitter(smoothed) < jitter(seq)


def test_timing_error_within_one_frame():
    rng = random.Random(9)
    units = [PhoneUnit.arpabet("M"), PhoneUnit.arpabet("IY", 1), PhoneUnit.silence()]
    for _ in range(300):
        t, ivs = 0.0, []
        for _ in range(rng.randint(1, 10)):
            d = rng.uniform(0.005, 0.4)
            ivs.append(PhoneInterval(rng.choice(units), t, t + d))
            t += d
        tl = to_frame_timeline(AlignmentTrack(tuple(ivs), t), 25.0)
        seq = OutputSequence(np.zeros((tl.total_frames, N_POINTS, 3)), 25.0, (Tag.HELD,) * tl.total_frames)
        rep = eval_metrics(seq, tl)
        assert rep.max_timing_error <= 1.0
        assert set(rep.to_dict()) >= {"jitter", "timing_errors", "coverage", "max_timing_error"}
