"""Pinyin syllables split into initials and finals."""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources
from typing import Optional

from ..errors import InvalidSyllableError
from .phones import (
    PINYIN_FINALS,
    PINYIN_INITIALS,
    PINYIN_ZERO_INITIAL_FINALS,
    PhoneUnit,
)

_INITIALS_LONGEST_FIRST = sorted(PINYIN_INITIALS, key=len, reverse=True)
_FINALS = frozenset(PINYIN_FINALS)
_ZERO_FINALS = frozenset(PINYIN_FINALS) | frozenset(PINYIN_ZERO_INITIAL_FINALS)
_SYLLABLE = re.compile(r"^([a-z]+)([0-5])?$")


@dataclass(frozen=True)
class PinyinSyllable:
    initial: Optional[str]
    final: str
    tone: Optional[int] = None

    @property
    def toneless(self) -> str:
        return (self.initial or "") + self.final

    def units(self) -> list[PhoneUnit]:
        out = [PhoneUnit.initial(self.initial)] if self.initial else []
        out.append(PhoneUnit.final(self.final))
        return out


def segment_pinyin(syllable: str) -> PinyinSyllable:
    """Split e.g. ``zhuang1`` into ``zh`` + ``uang`` with tone 1.

    Tone digit 5 (a common spelling of the neutral tone) is stored as 0.
    """
    m = _SYLLABLE.match(syllable)
    if not m:
        raise InvalidSyllableError(syllable, "expected lowercase letters with an optional tone digit")
    body, tone = m.group(1), m.group(2)
    tone = None if tone is None else int(tone) % 5

    initial = next((i for i in _INITIALS_LONGEST_FIRST if body.startswith(i)), None)
    if initial is not None and body[len(initial):] in _FINALS:
        return PinyinSyllable(initial, body[len(initial):], tone)
    if body in _ZERO_FINALS:
        return PinyinSyllable(None, body, tone)
    raise InvalidSyllableError(syllable, f"no final matches {body[len(initial or ''):]!r}")


def pinyin_to_units(text: str) -> list[PhoneUnit]:
    """Whitespace-separated syllables to units; sentence punctuation becomes silence."""
    units: list[PhoneUnit] = []
    for tok in re.findall(r"[a-z0-9]+|[.,!?;:]+|\S", text.lower()):
        if tok[0] in ".,!?;:":
            if not units or not units[-1].is_silence:
                units.append(PhoneUnit.silence())
        else:
            units.extend(segment_pinyin(tok).units())
    return units


@lru_cache(maxsize=None)
def standard_syllables() -> tuple[str, ...]:
    text = resources.files("posepipe.data").joinpath("pinyin_syllables.txt").read_text(encoding="utf-8")
    out = []
    for line in text.splitlines():
        if line.startswith("#"):
            continue
        out.extend(line.split())
    return tuple(out)
