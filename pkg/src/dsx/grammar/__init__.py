"""MiniLang grammar: tokenizer, relaxed parser, and tree types.

The parser is pure and stateless; other target-language grammars can be
plugged in by providing the same parse_snippet surface over their own
tree labels.
"""

from dsx.grammar.parser import parse_snippet
from dsx.grammar.query import QUERY_SEPARATOR, Query
from dsx.grammar.tokens import Token, tokenize
from dsx.grammar.tree import (
    EXPR_LABELS,
    ROOT_LABEL,
    STMT_LABELS,
    NodeKind,
    PlaceholderSpec,
    Snippet,
    TreeNode,
    is_empty_side,
    is_expression_node,
    is_statement_node,
    iter_nodes,
    render_text,
    render_tokens,
    terminal_labels,
    trees_equal,
)

__all__ = [
    "EXPR_LABELS",
    "QUERY_SEPARATOR",
    "ROOT_LABEL",
    "STMT_LABELS",
    "NodeKind",
    "PlaceholderSpec",
    "Query",
    "Snippet",
    "Token",
    "TreeNode",
    "is_empty_side",
    "is_expression_node",
    "is_statement_node",
    "iter_nodes",
    "parse_snippet",
    "render_text",
    "render_tokens",
    "terminal_labels",
    "tokenize",
    "trees_equal",
]
