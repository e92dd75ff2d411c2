"""Phone units used as dictionary keys: ARPABET phones, pinyin initials/finals, silence."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Optional

from ..errors import ParseError

ARPABET_VOWELS = (
    "AA", "AE", "AH", "AO", "AW", "AY", "EH", "ER",
    "EY", "IH", "IY", "OW", "OY", "UH", "UW",
)
ARPABET_CONSONANTS = (
    "B", "CH", "D", "DH", "F", "G", "HH", "JH", "K", "L", "M", "N",
    "NG", "P", "R", "S", "SH", "T", "TH", "V", "W", "Y", "Z", "ZH",
)
ARPABET_PHONES = ARPABET_VOWELS + ARPABET_CONSONANTS

PINYIN_INITIALS = (
    "b", "p", "m", "f", "d", "t", "n", "l", "g", "k", "h",
    "j", "q", "x", "zh", "ch", "sh", "r", "z", "c", "s",
)

# Finals as they are spelled after an initial. ``v`` stands in for u-umlaut.
PINYIN_FINALS = (
    "a", "o", "e", "ai", "ei", "ao", "ou", "an", "en", "ang", "eng", "ong", "er",
    "i", "ia", "ie", "iao", "iu", "ian", "in", "iang", "ing", "iong",
    "u", "ua", "uo", "uai", "ui", "uan", "un", "uang",
    "ue", "v", "ve",
)
# Spellings that only occur without an initial (y-/w- orthography).
PINYIN_ZERO_INITIAL_FINALS = (
    "yi", "ya", "yo", "ye", "yao", "you", "yan", "yin", "yang", "ying", "yong",
    "yu", "yue", "yuan", "yun",
    "wu", "wa", "wo", "wai", "wei", "wan", "wen", "wang", "weng",
)

SILENCE_LABELS = frozenset({"", "sil", "sp", "SIL", "SP", "spn", "<sil>"})
SILENCE_LABEL = "sil"

_VOWELS = frozenset(ARPABET_VOWELS)
_CONSONANTS = frozenset(ARPABET_CONSONANTS)
_INITIALS = frozenset(PINYIN_INITIALS)
_FINALS = frozenset(PINYIN_FINALS) | frozenset(PINYIN_ZERO_INITIAL_FINALS)


class PhoneKind(enum.Enum):
    ARPABET = "arpabet"
    PINYIN_INITIAL = "initial"
    PINYIN_FINAL = "final"
    SILENCE = "silence"


class Stress(enum.IntEnum):
    UNSTRESSED = 0
    PRIMARY = 1
    SECONDARY = 2


@dataclass(frozen=True)
class PhoneUnit:
    kind: PhoneKind
    symbol: Optional[str] = None
    stress: Optional[Stress] = None

    def __post_init__(self):
        kind, symbol, stress = self.kind, self.symbol, self.stress
        if kind is PhoneKind.SILENCE:
            if symbol is not None or stress is not None:
                raise ValueError("silence carries no symbol or stress")
        elif kind is PhoneKind.ARPABET:
            if symbol in _VOWELS:
                if stress is None:
                    raise ValueError(f"ARPABET vowel {symbol} needs a stress level")
                object.__setattr__(self, "stress", Stress(stress))
            elif symbol in _CONSONANTS:
                if stress is not None:
                    raise ValueError(f"ARPABET consonant {symbol} cannot carry stress")
            else:
                raise ValueError(f"unknown ARPABET phone {symbol!r}")
        else:
            if stress is not None:
                raise ValueError("pinyin units carry no stress")
            table = _INITIALS if kind is PhoneKind.PINYIN_INITIAL else _FINALS
            if symbol not in table:
                raise ValueError(f"unknown pinyin {kind.value} {symbol!r}")

    @property
    def sort_key(self):
        return (self.kind.value, self.symbol or "", -1 if self.stress is None else int(self.stress))

    @classmethod
    def arpabet(cls, symbol: str, stress: Optional[int] = None) -> "PhoneUnit":
        return cls(PhoneKind.ARPABET, symbol, None if stress is None else Stress(stress))

    @classmethod
    def initial(cls, symbol: str) -> "PhoneUnit":
        return cls(PhoneKind.PINYIN_INITIAL, symbol)

    @classmethod
    def final(cls, symbol: str) -> "PhoneUnit":
        return cls(PhoneKind.PINYIN_FINAL, symbol)

    @classmethod
    def silence(cls) -> "PhoneUnit":
        return cls(PhoneKind.SILENCE)

    @property
    def is_silence(self) -> bool:
        return self.kind is PhoneKind.SILENCE

    @property
    def is_vowel(self) -> bool:
        return self.kind is PhoneKind.ARPABET and self.symbol in _VOWELS

    @property
    def base(self) -> str:
        """Symbol without stress; ``sil`` for silence."""
        return SILENCE_LABEL if self.is_silence else self.symbol

    @property
    def label(self) -> str:
        if self.is_silence:
            return SILENCE_LABEL
        if self.stress is not None:
            return f"{self.symbol}{int(self.stress)}"
        return self.symbol

    def with_stress(self, stress: int) -> "PhoneUnit":
        return PhoneUnit(self.kind, self.symbol, Stress(stress))

    def __str__(self):
        return self.label

    def __repr__(self):
        return f"PhoneUnit({self.label})"


def parse_arpabet(token: str) -> PhoneUnit:
    """Parse ``IY1`` / ``M`` into a unit; raises ValueError on unknown symbols."""
    if token and token[-1].isdigit():
        symbol, digit = token[:-1], int(token[-1])
        if symbol not in _VOWELS:
            raise ValueError(f"stress digit on non-vowel {token!r}")
        if digit > 2:
            raise ValueError(f"bad stress digit in {token!r}")
        return PhoneUnit.arpabet(symbol, digit)
    return PhoneUnit.arpabet(token)


def parse_label(label: str) -> PhoneUnit:
    """Inverse of ``PhoneUnit.label``.

    Uppercase labels are ARPABET, lowercase labels are pinyin initials or
    finals (the two tables are disjoint), and the usual aligner silence
    markers map to silence.
    """
    label = label.strip()
    if label in SILENCE_LABELS:
        return PhoneUnit.silence()
    try:
        if label.isupper() or label[-1].isdigit():
            return parse_arpabet(label)
        if label in _INITIALS:
            return PhoneUnit.initial(label)
        if label in _FINALS:
            return PhoneUnit.final(label)
    except ValueError as exc:
        raise ParseError(str(exc)) from None
    raise ParseError(f"unknown phone label {label!r}")


def arpabet_inventory(stressed: bool = False) -> list[PhoneUnit]:
    """The 39 CMU base phones (vowels at primary stress), or all 69 stress variants."""
    units = []
    for v in ARPABET_VOWELS:
        if stressed:
            units.extend(PhoneUnit.arpabet(v, s) for s in (0, 1, 2))
        else:
            units.append(PhoneUnit.arpabet(v, 1))
    units.extend(PhoneUnit.arpabet(c) for c in ARPABET_CONSONANTS)
    return units


def pinyin_inventory() -> list[PhoneUnit]:
    return [PhoneUnit.initial(i) for i in PINYIN_INITIALS] + [
        PhoneUnit.final(f) for f in PINYIN_FINALS + PINYIN_ZERO_INITIAL_FINALS
    ]
