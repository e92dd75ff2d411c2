from pathlib import Path

import pytest

from posepipe.keypoints import N_POINTS
from posepipe.lexicon import load_bundled_lexicon
from posepipe.posedict import build_dictionary
from posepipe.synth import OutputSequence, Tag
from posepipe.synthetic import english_corpus, mandarin_corpus, write_clip

FIXTURES = Path(__file__).parent / "fixtures"


@pytest.fixture(scope="session")
def fixtures():
    return FIXTURES


@pytest.fixture(scope="session")
def lexicon():
    return load_bundled_lexicon()


@pytest.fixture(scope="session")
def english_clip(lexicon):
    return english_corpus(lexicon)


@pytest.fixture(scope="session")
def english_dict(english_clip):
    seq, track = english_clip
    return build_dictionary([("en", seq, track)], width=7, fps=25.0)


@pytest.fixture(scope="session")
def mandarin_dict():
    seq, track = mandarin_corpus()
    return build_dictionary([("zh", seq, track)], width=7, fps=25.0)


@pytest.fixture(scope="session")
def corpus_dirs(tmp_path_factory, english_clip):
    """On-disk English and Mandarin clips (keypoint dirs + TextGrids)."""
    root = tmp_path_factory.mktemp("corpus")
    en_kp, en_tg = write_clip(*english_clip, root / "english")
    zh_kp, zh_tg = write_clip(*mandarin_corpus(), root / "mandarin")
    return {"en": (en_kp, en_tg), "zh": (zh_kp, zh_tg), "root": root}


def random_sequence(rng, n, fps=25.0, scale=500.0):
    pts = rng.uniform(0, scale, size=(n, N_POINTS, 3))
    pts[..., 2] = rng.uniform(0, 1, size=(n, N_POINTS))
    return OutputSequence(pts, fps, (Tag.COPIED,) * n)
