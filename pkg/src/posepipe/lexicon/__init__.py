from .cmudict import (
    PronouncingDictionary,
    load_bundled_lexicon,
    parse_pronouncing_dict,
    serialize_pronouncing_dict,
    transcribe,
)
from .normalize import Token, TokenKind, TokenList, normalize_text, spell_number
from .phones import (
    ARPABET_CONSONANTS,
    ARPABET_PHONES,
    ARPABET_VOWELS,
    PINYIN_FINALS,
    PINYIN_INITIALS,
    PhoneKind,
    PhoneUnit,
    Stress,
    arpabet_inventory,
    parse_arpabet,
    parse_label,
    pinyin_inventory,
)
from .pinyin import PinyinSyllable, pinyin_to_units, segment_pinyin, standard_syllables

__all__ = [
    "ARPABET_CONSONANTS", "ARPABET_PHONES", "ARPABET_VOWELS", "PINYIN_FINALS",
    "PINYIN_INITIALS", "PhoneKind", "PhoneUnit", "PinyinSyllable",
    "PronouncingDictionary", "Stress", "Token", "TokenKind", "TokenList",
    "arpabet_inventory", "load_bundled_lexicon", "normalize_text", "parse_arpabet",
    "parse_label", "parse_pronouncing_dict", "pinyin_inventory", "pinyin_to_units",
    "segment_pinyin", "serialize_pronouncing_dict", "spell_number",
    "standard_syllables", "transcribe",
]
