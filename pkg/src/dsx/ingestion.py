"""Hunk-level change records, unified-diff ingestion, and the on-disk corpus.

The corpus is JSON Lines, one object per change:
``{"id": int, "repo": str, "commit": str, "file": str, "old": [str], "new": [str]}``.
Ids are dense 0..n-1 in file order.  Hunks whose two sides are tree-equal
or unparseable are skipped (never fatal); skip counts are reported.
"""

from __future__ import annotations

import json
import logging
import re
import sys
from collections import OrderedDict
from dataclasses import dataclass

from dsx.errors import CorpusFormatError, DiffFormatError, DsxError
from dsx.grammar import Snippet, TreeNode, parse_snippet, tokenize, trees_equal

log = logging.getLogger(__name__)

_HUNK_HEADER_RE = re.compile(r"@@ -\d+(?:,\d+)? \+\d+(?:,\d+)? @@")


@dataclass(frozen=True)
class CodeChange:
    """One hunk: the removed lines and the added lines, with provenance."""

    id: int
    repo: str
    commit: str
    file: str
    old_lines: tuple[str, ...]
    new_lines: tuple[str, ...]


@dataclass
class IngestStats:
    kept: int = 0
    skipped_unparseable: int = 0
    skipped_tree_equal: int = 0
    skipped_empty: int = 0

    @property
    def skipped(self) -> int:
        return self.skipped_unparseable + self.skipped_tree_equal + self.skipped_empty


class Corpus:
    """Append-ordered list of changes with lazily cached parse trees and
    terminal-token sets.  Immutable once loaded; safe for concurrent
    readers.  The tree cache is LRU-bounded so exhaustive scans over large
    corpora cannot exhaust memory."""

    TREE_CACHE_SIZE = 20_000

    def __init__(self):
        self.changes: list[CodeChange] = []
        self._trees: OrderedDict[int, tuple[TreeNode, TreeNode]] = OrderedDict()
        self._token_sets: dict[int, tuple[frozenset[str], frozenset[str]]] = {}

    def __len__(self) -> int:
        return len(self.changes)

    def __iter__(self):
        return iter(self.changes)

    def get(self, change_id: int) -> CodeChange:
        return self.changes[change_id]

    def trees(self, change_id: int) -> tuple[TreeNode, TreeNode]:
        """Parse trees of both sides, cached (LRU) after first use."""
        cached = self._trees.get(change_id)
        if cached is None:
            cached = self.parse_change(self.changes[change_id])
            self._trees[change_id] = cached
            if len(self._trees) > self.TREE_CACHE_SIZE:
                self._trees.popitem(last=False)
        else:
            self._trees.move_to_end(change_id)
        return cached

    def token_sets(self, change_id: int) -> tuple[frozenset[str], frozenset[str]]:
        """Concrete terminal-token sets of both sides, cached.

        Terminal labels of a parse are exactly the lexed token texts, so
        this lexes without parsing (much cheaper on large corpora)."""
        cached = self._token_sets.get(change_id)
        if cached is None:
            change = self.changes[change_id]
            cached = (
                frozenset(sys.intern(t.text) for t in tokenize(list(change.old_lines))),
                frozenset(sys.intern(t.text) for t in tokenize(list(change.new_lines))),
            )
            self._token_sets[change_id] = cached
        return cached

    @staticmethod
    def parse_change(change: CodeChange) -> tuple[TreeNode, TreeNode]:
        old_tree = parse_snippet(Snippet.code(change.old_lines))
        new_tree = parse_snippet(Snippet.code(change.new_lines))
        return old_tree, new_tree


def append_change(corpus: Corpus, change: CodeChange) -> int:
    """Validate a change against the CodeChange invariants and append it,
    returning its assigned id.  Raises DsxError when invalid."""
    if not change.old_lines and not change.new_lines:
        raise DsxError("change has two empty sides")
    old_tree, new_tree = Corpus.parse_change(change)  # raises on parse failure
    if trees_equal(old_tree, new_tree):
        raise DsxError("change is tree-equal on both sides")
    change_id = len(corpus.changes)
    if change.id != change_id:
        change = CodeChange(
            change_id, change.repo, change.commit, change.file,
            change.old_lines, change.new_lines,
        )
    corpus.changes.append(change)
    corpus._trees[change_id] = (old_tree, new_tree)
    return change_id


def split_commit_into_hunks(
    diff_text: str, repo: str = "", stats: IngestStats | None = None
) -> list[CodeChange]:
    """Split unified-diff (or ``git log -p``) text into hunk-level changes.

    One CodeChange per ``@@`` hunk: old lines are the ``-`` lines, new
    lines the ``+`` lines; context lines are excluded.  Hunks that do not
    parse, or whose sides are tree-equal, are skipped with a logged
    reason.  Raises DiffFormatError on a malformed hunk header.
    """
    stats = stats if stats is not None else IngestStats()
    changes: list[CodeChange] = []
    lines = diff_text.splitlines()
    commit = ""
    file = ""
    old_acc: list[str] | None = None
    new_acc: list[str] = []

    def flush() -> None:
        nonlocal old_acc, new_acc
        if old_acc is None:
            return
        _keep_hunk(changes, repo, commit, file, old_acc, new_acc, stats)
        old_acc = None
        new_acc = []

    for i, raw in enumerate(lines):
        if raw.startswith("@@"):
            flush()
            if not _HUNK_HEADER_RE.match(raw):
                raise DiffFormatError(f"malformed hunk header: {raw!r}")
            old_acc = []
            continue
        # A "--- " directly followed by "+++ " is the next file header pair,
        # even right after a hunk body (plain unified diffs have no other
        # separator); anything else starting with "-" inside a hunk is a
        # removed line.
        is_file_header = raw.startswith("--- ") and i + 1 < len(lines) and lines[
            i + 1
        ].startswith("+++ ")
        if old_acc is not None and not is_file_header:
            if raw.startswith("-"):
                old_acc.append(raw[1:])
                continue
            if raw.startswith("+"):
                new_acc.append(raw[1:])
                continue
            if raw.startswith("\\"):
                continue  # "\ No newline at end of file"
            if raw.startswith(" ") or raw == "":
                continue
            flush()  # anything else ends the hunk; reinterpret below
        if raw.startswith("commit "):
            flush()
            parts = raw.split()
            commit = parts[1] if len(parts) > 1 else ""
        elif raw.startswith("diff --git"):
            flush()
        elif raw.startswith("+++ "):
            path = raw[4:].strip()
            file = path[2:] if path.startswith("b/") else path
        elif is_file_header:
            flush()
    flush()
    return changes


def _keep_hunk(
    changes: list[CodeChange],
    repo: str,
    commit: str,
    file: str,
    old_lines: list[str],
    new_lines: list[str],
    stats: IngestStats,
) -> None:
    if not old_lines and not new_lines:
        stats.skipped_empty += 1
        return
    change = CodeChange(
        len(changes), repo, commit, file, tuple(old_lines), tuple(new_lines)
    )
    try:
        old_tree, new_tree = Corpus.parse_change(change)
    except DsxError as exc:
        stats.skipped_unparseable += 1
        log.debug("skipping unparseable hunk (%s:%s): %s", commit, file, exc)
        return
    if trees_equal(old_tree, new_tree):
        stats.skipped_tree_equal += 1
        log.debug("skipping tree-equal hunk (%s:%s)", commit, file)
        return
    stats.kept += 1
    changes.append(change)


def load_corpus(path) -> Corpus:
    """Load a JSON-Lines corpus; ids are assigned by file order."""
    corpus = Corpus()
    with open(path, "r", encoding="utf-8") as fh:
        for line_no, line in enumerate(fh, start=1):
            line = line.strip()
            if not line:
                continue
            try:
                record = json.loads(line)
            except json.JSONDecodeError as exc:
                raise CorpusFormatError(line_no, f"bad JSON: {exc}") from exc
            if not isinstance(record, dict):
                raise CorpusFormatError(line_no, "record is not an object")
            try:
                old = record["old"]
                new = record["new"]
            except KeyError as exc:
                raise CorpusFormatError(line_no, f"missing field {exc}") from exc
            if not isinstance(old, list) or not isinstance(new, list):
                raise CorpusFormatError(line_no, "old/new must be arrays of lines")
            if not old and not new:
                raise CorpusFormatError(line_no, "both sides are empty")
            corpus.changes.append(
                CodeChange(
                    id=len(corpus.changes),
                    repo=str(record.get("repo", "")),
                    commit=str(record.get("commit", "")),
                    file=str(record.get("file", "")),
                    old_lines=tuple(str(x) for x in old),
                    new_lines=tuple(str(x) for x in new),
                )
            )
    return corpus


def save_corpus(corpus: Corpus, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        for change in corpus.changes:
            fh.write(
                json.dumps(
                    {
                        "id": change.id,
                        "repo": change.repo,
                        "commit": change.commit,
                        "file": change.file,
                        "old": list(change.old_lines),
                        "new": list(change.new_lines),
                    }
                )
                + "\n"
            )


def validate_corpus(corpus: Corpus) -> None:
    """Full-scan check of the stored-change invariants (parseability,
    tree inequality, non-empty).  Raises DsxError on the first violation."""
    for change in corpus.changes:
        if not change.old_lines and not change.new_lines:
            raise DsxError(f"change {change.id}: both sides empty")
        old_tree, new_tree = Corpus.parse_change(change)
        if trees_equal(old_tree, new_tree):
            raise DsxError(f"change {change.id}: sides are tree-equal")
