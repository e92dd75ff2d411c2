"""Exception hierarchy shared by every pipeline stage."""


class PosePipeError(Exception):
    """Base class. ``stage`` is filled in by the pipeline when the error crosses a stage."""

    stage = None

    def __str__(self):
        msg = super().__str__()
        if self.stage:
            return f"[{self.stage}] {msg}"
        return msg


class ParseError(PosePipeError):
    """Malformed input file (lexicon, TextGrid, JSON, keypoints)."""

    def __init__(self, message, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class ConfigError(PosePipeError):
    pass


class DataError(PosePipeError):
    """Input is well formed but cannot be served by the available data."""


class OOVError(DataError):
    def __init__(self, word):
        super().__init__(f"out-of-vocabulary word: {word}")
        self.word = word


class InvalidSyllableError(DataError):
    def __init__(self, syllable, reason="not a standard pinyin syllable"):
        super().__init__(f"invalid pinyin syllable {syllable!r}: {reason}")
        self.syllable = syllable


class MissingPhoneError(DataError):
    def __init__(self, unit):
        super().__init__(f"phone not in dictionary: {unit}")
        self.unit = unit


class ExportError(PosePipeError):
    def __init__(self, path, cause):
        super().__init__(f"cannot write {path}: {cause}")
        self.path = path


class InvariantError(PosePipeError):
    """An internal consistency check failed; indicates a bug upstream."""
