"""Tokenizer for MiniLang and its query-language extension.

Lexing is mode-independent: query tokens (placeholders, the wildcard
``<...>`` and the empty marker ``_``) are always recognized; the parser
rejects them in code mode.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from dsx.errors import LexError

KEYWORDS = {"if", "else", "while", "return"}
BOOL_LITERALS = {"true", "false"}

# Operator membership by syntactic role.  `-` appears in two sets: prefix
# position makes it unary, infix makes it binary.
ASSIGN_OPS = {"=", "+=", "-="}
BINARY_OPS = {"||", "&&", "==", "!=", "<=", ">=", "<", ">", "+", "-", "*", "/", "%"}
UNARY_OPS = {"!", "-", "++", "--"}

PLACEHOLDER_CATEGORIES = ("EXPR", "ID", "LT", "OP", "binOP", "unOP")

WILDCARD_TEXT = "<...>"
EMPTY_TEXT = "_"

# Token kinds.
IDENT = "ident"
INT = "int"
STRING = "string"
BOOL = "bool"
KEYWORD = "keyword"
OPERATOR = "op"
PUNCT = "punct"
PLACEHOLDER = "placeholder"
WILDCARD = "wildcard"
EMPTY = "empty"

QUERY_KINDS = (PLACEHOLDER, WILDCARD, EMPTY)


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    line: int
    column: int
    category: str | None = None  # placeholder category (EXPR, ID, ...)
    name: int | None = None  # placeholder number, None when unnamed


_TOKEN_RE = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<placeholder>(?:EXPR|binOP|unOP|ID|LT|OP)(?:<(?P<phnum>\d+)>)?(?![A-Za-z0-9_]))
  | (?P<wildcard><\.\.\.>)
  | (?P<empty>_(?![A-Za-z0-9_]))
  | (?P<ident>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<int>\d+)
  | (?P<string>"(?:[^"\\\n]|\\.)*")
  | (?P<badstring>"(?:[^"\\\n]|\\.)*$)
  | (?P<op>\+\+|--|\+=|-=|\|\||&&|==|!=|<=|>=|[=<>+\-*/%!])
  | (?P<punct>[(){};,.])
    """,
    re.VERBOSE,
)


def tokenize(lines: list[str]) -> list[Token]:
    """Maximal-munch lexing of a line sequence into a flat token list.

    Raises LexError on an unterminated string literal or any character
    no rule covers.
    """
    tokens: list[Token] = []
    for line_no, line in enumerate(lines, start=1):
        pos = 0
        while pos < len(line):
            m = _TOKEN_RE.match(line, pos)
            if m is None:
                raise LexError(line_no, pos + 1, f"unexpected character {line[pos]!r}")
            pos = m.end()
            if m.group("ws"):
                continue
            col = m.start() + 1
            if m.group("badstring"):
                raise LexError(line_no, col, "unterminated string literal")
            if m.group("placeholder"):
                text = m.group("placeholder")
                num = m.group("phnum")
                category = text.split("<", 1)[0]
                tokens.append(
                    Token(
                        PLACEHOLDER,
                        text,
                        line_no,
                        col,
                        category=category,
                        name=int(num) if num is not None else None,
                    )
                )
            elif m.group("wildcard"):
                tokens.append(Token(WILDCARD, WILDCARD_TEXT, line_no, col))
            elif m.group("empty"):
                tokens.append(Token(EMPTY, EMPTY_TEXT, line_no, col))
            elif m.group("ident"):
                text = m.group("ident")
                if text in KEYWORDS:
                    tokens.append(Token(KEYWORD, text, line_no, col))
                elif text in BOOL_LITERALS:
                    tokens.append(Token(BOOL, text, line_no, col))
                else:
                    tokens.append(Token(IDENT, text, line_no, col))
            elif m.group("int"):
                tokens.append(Token(INT, m.group("int"), line_no, col))
            elif m.group("string"):
                tokens.append(Token(STRING, m.group("string"), line_no, col))
            elif m.group("op"):
                tokens.append(Token(OPERATOR, m.group("op"), line_no, col))
            else:
                tokens.append(Token(PUNCT, m.group("punct"), line_no, col))
    return tokens


def terminal_category(text: str) -> str | None:
    """Placeholder category a concrete terminal token belongs to, judged by
    its text alone: ID for identifiers, LT for literals, None for
    operators (whose category depends on position), keywords and
    punctuation."""
    if text in KEYWORDS:
        return None
    if text in BOOL_LITERALS:
        return "LT"
    if re.fullmatch(r"[A-Za-z_][A-Za-z0-9_]*", text):
        return "ID"
    if re.fullmatch(r"\d+", text) or (text.startswith('"') and text.endswith('"')):
        return "LT"
    return None
