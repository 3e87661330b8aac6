"""Exception types shared across the package."""

from __future__ import annotations


class DsxError(Exception):
    """Base class for all errors raised by this package."""


class LexError(DsxError):
    """Raised when the tokenizer cannot produce a token (e.g. an
    unterminated string literal)."""

    def __init__(self, line: int, column: int, message: str):
        super().__init__(f"line {line}, col {column}: {message}")
        self.line = line
        self.column = column
        self.message = message


class ParseError(DsxError):
    """Raised when no (relaxed) production applies at some token."""

    def __init__(self, line: int, column: int, message: str):
        super().__init__(f"line {line}, col {column}: {message}")
        self.line = line
        self.column = column
        self.message = message


class QueryTokenInCodeMode(ParseError):
    """A placeholder, wildcard, or empty marker appeared in a snippet
    parsed in code mode."""


class DiffFormatError(DsxError):
    """Malformed unified-diff input (bad hunk header)."""


class CorpusFormatError(DsxError):
    """Corpus file violates the JSON-Lines schema."""

    def __init__(self, line_number: int, message: str):
        super().__init__(f"corpus line {line_number}: {message}")
        self.line_number = line_number
        self.message = message


class IndexFormatError(DsxError):
    """Index file has a bad magic/version or is truncated."""


class LengthMismatch(DsxError):
    """Query vector length differs from the index vector length."""


class QueryParseError(DsxError):
    """A query side failed to parse; carries grammar diagnostics."""

    def __init__(self, side: str, line: int, column: int, message: str):
        super().__init__(f"{side} side, line {line}, col {column}: {message}")
        self.side = side
        self.line = line
        self.column = column
        self.message = message


class IndexMismatch(DsxError):
    """Search configuration does not agree with the loaded index."""


class EmptyCorpus(DsxError):
    """An operation that samples from a corpus got an empty one."""
