"""Text normalization: numbers to words, words and pauses as tokens."""

from __future__ import annotations

import enum
import logging
import re
from dataclasses import dataclass
from typing import Optional

log = logging.getLogger(__name__)

PAUSE_CHARS = ".,!?;:"
# treated like whitespace; not counted as dropped
SEPARATORS = "-\u2013\u2014\"'()[]{}/“”‘’"

ONES = (
    "ZERO", "ONE", "TWO", "THREE", "FOUR", "FIVE", "SIX", "SEVEN", "EIGHT", "NINE",
    "TEN", "ELEVEN", "TWELVE", "THIRTEEN", "FOURTEEN", "FIFTEEN", "SIXTEEN",
    "SEVENTEEN", "EIGHTEEN", "NINETEEN",
)
TENS = ("", "", "TWENTY", "THIRTY", "FORTY", "FIFTY", "SIXTY", "SEVENTY", "EIGHTY", "NINETY")

MAX_SPELLED = 999_999

_TOKEN = re.compile(
    r"(?P<num>\d{1,3}(?:,\d{3})+(?!\d)|\d+)"
    r"|(?P<word>[A-Za-z]+(?:'[A-Za-z]+)*)"
    r"|(?P<pause>[.,!?;:]+)"
    r"|(?P<space>\s+)"
    r"|(?P<other>.)",
    re.DOTALL,
)


class TokenKind(enum.Enum):
    WORD = "word"
    PAUSE = "pause"


@dataclass(frozen=True)
class Token:
    kind: TokenKind
    text: Optional[str] = None

    @classmethod
    def word(cls, text):
        return cls(TokenKind.WORD, text)

    @classmethod
    def pause(cls):
        return cls(TokenKind.PAUSE)


class TokenList(list):
    """List of tokens; ``dropped`` counts characters that could not be read."""

    dropped = 0


def _below_thousand(n):
    words = []
    if n >= 100:
        words += [ONES[n // 100], "HUNDRED"]
        n %= 100
        if n == 0:
            return words
    if n >= 20:
        words.append(TENS[n // 10])
        if n % 10:
            words.append(ONES[n % 10])
    elif n or not words:
        words.append(ONES[n])
    return words


def spell_number(digits: str) -> list[str]:
    """English words for a numeral string.

    Values up to 999,999 are read as cardinals; longer numerals and numerals
    with a leading zero are read digit by digit.
    """
    if (len(digits) > 1 and digits[0] == "0") or int(digits) > MAX_SPELLED:
        return [ONES[int(d)] for d in digits]
    n = int(digits)
    if n < 1000:
        return _below_thousand(n)
    words = _below_thousand(n // 1000) + ["THOUSAND"]
    if n % 1000:
        words += _below_thousand(n % 1000)
    return words


def normalize_text(text: str) -> TokenList:
    tokens = TokenList()
    dropped = 0
    for m in _TOKEN.finditer(text):
        kind = m.lastgroup
        if kind == "num":
            tokens.extend(Token.word(w) for w in spell_number(m.group().replace(",", "")))
        elif kind == "word":
            tokens.append(Token.word(m.group().upper()))
        elif kind == "pause":
            if not tokens or tokens[-1].kind is not TokenKind.PAUSE:
                tokens.append(Token.pause())
        elif kind == "other" and m.group() not in SEPARATORS:
            dropped += 1
    if dropped:
        log.warning("dropped %d unreadable character(s)", dropped)
    tokens.dropped = dropped
    return tokens
