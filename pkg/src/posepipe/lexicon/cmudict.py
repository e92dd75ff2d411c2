"""CMU pronouncing dictionary parsing and word-to-phone transcription."""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from importlib import resources
from types import MappingProxyType
from typing import Mapping

from ..errors import OOVError, ParseError
from .normalize import Token, TokenKind
from .phones import PhoneUnit, parse_arpabet

_VARIANT = re.compile(r"^(?P<word>.+?)\((?P<n>\d+)\)$")

Pronunciation = tuple[PhoneUnit, ...]


@dataclass(frozen=True)
class PronouncingDictionary:
    entries: Mapping[str, tuple[Pronunciation, ...]] = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "entries", MappingProxyType(dict(self.entries)))

    def __len__(self):
        return len(self.entries)

    def __contains__(self, word):
        return word.upper() in self.entries

    def __getitem__(self, word) -> tuple[Pronunciation, ...]:
        return self.entries[word.upper()]

    def first(self, word: str) -> Pronunciation:
        try:
            return self.entries[word.upper()][0]
        except KeyError:
            raise OOVError(word.upper()) from None


def parse_pronouncing_dict(text: str) -> PronouncingDictionary:
    """Parse CMU-dict formatted text.

    ``WORD(n)`` lines are appended as further variants of ``WORD``; variants
    keep their order of appearance in the file.
    """
    entries: dict[str, list[Pronunciation]] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith(";;;"):
            continue
        parts = line.split()
        word, phones = parts[0], parts[1:]
        if not phones:
            raise ParseError(f"no phones for {word!r}", line=lineno)
        m = _VARIANT.match(word)
        if m:
            word = m.group("word")
        try:
            pron = tuple(parse_arpabet(p) for p in phones)
        except ValueError as exc:
            raise ParseError(f"{word}: {exc}", line=lineno) from None
        entries.setdefault(word.upper(), []).append(pron)
    return PronouncingDictionary({w: tuple(p) for w, p in entries.items()})


def format_pronunciation(pron: Pronunciation) -> str:
    return " ".join(p.label for p in pron)


def serialize_pronouncing_dict(d: PronouncingDictionary) -> str:
    lines = []
    for word, prons in d.entries.items():
        for i, pron in enumerate(prons):
            key = word if i == 0 else f"{word}({i})"
            lines.append(f"{key}  {format_pronunciation(pron)}")
    return "\n".join(lines) + ("\n" if lines else "")


def load_bundled_lexicon() -> PronouncingDictionary:
    """Small English lexicon shipped with the package (demo words, digits, pangrams)."""
    text = resources.files("posepipe.data").joinpath("lexicon.dict").read_text(encoding="utf-8")
    return parse_pronouncing_dict(text)


def transcribe(tokens: list[Token], lexicon: PronouncingDictionary) -> list[PhoneUnit]:
    if not len(lexicon):
        raise ValueError("empty pronouncing dictionary")
    phones: list[PhoneUnit] = []
    for tok in tokens:
        if tok.kind is TokenKind.PAUSE:
            phones.append(PhoneUnit.silence())
        else:
            phones.extend(lexicon.first(tok.text))
    return phones
