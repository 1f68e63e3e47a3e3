"""Exception hierarchy shared by all rankfreq modules."""


class RankFreqError(Exception):
    """Base class for every error raised by this package."""


class ConfigError(RankFreqError, ValueError):
    pass


class TextDecodeError(RankFreqError, ValueError):
    """Raised when input bytes are not valid UTF-8.

    ``offset`` is the byte position of the first undecodable byte.
    """

    def __init__(self, offset, reason=""):
        self.offset = offset
        msg = f"invalid UTF-8 at byte offset {offset}"
        if reason:
            msg += f" ({reason})"
        super().__init__(msg)


class EmptyCorpusError(RankFreqError, ValueError):
    pass


class InsufficientDataError(RankFreqError, ValueError):
    pass


class NoValidModelError(RankFreqError, ValueError):
    pass


class TranslitError(RankFreqError, ValueError):
    def __init__(self, message, char=None, offset=None):
        self.char = char
        self.offset = offset
        super().__init__(message)


class LemmaMapError(RankFreqError, ValueError):
    def __init__(self, message, line=None):
        self.line = line
        super().__init__(message if line is None else f"line {line}: {message}")
