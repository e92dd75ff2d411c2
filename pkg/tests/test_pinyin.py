import pytest

from posepipe.errors import InvalidSyllableError
from posepipe.lexicon import PINYIN_FINALS, PINYIN_INITIALS, PhoneUnit, pinyin_to_units, segment_pinyin, standard_syllables
from posepipe.lexicon.phones import PINYIN_ZERO_INITIAL_FINALS


def oracle_segment(syllable):
    """Enumerate every split point; keep the longest initial whose remainder is a final."""
    body = syllable.rstrip("012345")
    best = None
    for k in range(len(body) + 1):
        head, tail = body[:k], body[k:]
        if k == 0:
            if tail in PINYIN_FINALS or tail in PINYIN_ZERO_INITIAL_FINALS:
                best = (None, tail)
        elif head in PINYIN_INITIALS and tail in PINYIN_FINALS:
            best = (head, tail)
    return best


def test_zero_initial():
    s = segment_pinyin("an")
    assert (s.initial, s.final, s.tone) == (None, "an", None)


@pytest.mark.parametrize("syl", ["ma", "zhuang1", "shi4", "chuang", "zi", "ci2", "si"])
def test_against_oracle(syl):
    s = segment_pinyin(syl)
    assert (s.initial, s.final) == oracle_segment(syl)


def test_zhuang_longest_match():
    s = segment_pinyin("zhuang1")
    assert (s.initial, s.final, s.tone) == ("zh", "uang", 1)


def test_neutral_tone_five():
    assert segment_pinyin("ma5").tone == 0


@pytest.mark.parametrize("bad", ["zhx", "q", "bi9", "Ma", "byang", ""])
def test_invalid(bad):
    with pytest.raises(InvalidSyllableError):
        segment_pinyin(bad)


def test_table_size():
    table = standard_syllables()
    assert len(table) >= 386
    assert len(set(table)) == len(table)


def test_whole_table_segments_to_identity():
    for syl in standard_syllables():
        s = segment_pinyin(syl)
        assert s.toneless == syl
        assert (s.initial, s.final) == oracle_segment(syl)
        for tone in range(5):
            assert segment_pinyin(f"{syl}{tone}").toneless == syl


def test_pinyin_to_units():
    units = pinyin_to_units("ni3 hao3, er")
    assert [u.label for u in units] == ["n", "i", "h", "ao", "sil", "er"]
    assert units[0] == PhoneUnit.initial("n")
