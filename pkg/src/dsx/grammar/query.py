"""The two-sided query object and its parsing helpers."""

from __future__ import annotations

from dataclasses import dataclass

from dsx.errors import DsxError, QueryParseError
from dsx.grammar.parser import parse_snippet
from dsx.grammar.tree import Snippet, TreeNode, is_empty_side

QUERY_SEPARATOR = " -> "


@dataclass(frozen=True)
class Query:
    """A pair of query-language snippets describing code before and after a
    change.  Either side may be the empty marker ``_``."""

    old_lines: tuple[str, ...]
    new_lines: tuple[str, ...]

    @staticmethod
    def from_strings(old: str, new: str) -> "Query":
        return Query(_split(old), _split(new))

    @staticmethod
    def from_combined(text: str) -> "Query":
        """Parse the single-string CLI form ``<old> -> <new>``."""
        if QUERY_SEPARATOR not in text:
            raise QueryParseError(
                "query", 1, 1, f"missing {QUERY_SEPARATOR!r} separator"
            )
        old, new = text.split(QUERY_SEPARATOR, 1)
        return Query.from_strings(old, new)

    def parse(self) -> tuple[TreeNode, TreeNode]:
        """Parse both sides in query mode.

        Raises QueryParseError with side/line/column diagnostics, including
        the degenerate case where both sides are empty.
        """
        old_tree = _parse_side("old", self.old_lines)
        new_tree = _parse_side("new", self.new_lines)
        if is_empty_side(old_tree) and is_empty_side(new_tree):
            raise QueryParseError("old", 1, 1, "both query sides are empty")
        return old_tree, new_tree


def _split(text: str) -> tuple[str, ...]:
    return tuple(text.splitlines()) if text else ()


def _parse_side(side: str, lines: tuple[str, ...]) -> TreeNode:
    try:
        return parse_snippet(Snippet.query(lines))
    except DsxError as exc:
        line = getattr(exc, "line", 1)
        column = getattr(exc, "column", 1)
        message = getattr(exc, "message", str(exc))
        raise QueryParseError(side, line, column, message) from exc
