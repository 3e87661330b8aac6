"""Parse-tree node types and structural helpers."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Iterator

from dsx.grammar import tokens as tk


class NodeKind(enum.Enum):
    NONTERMINAL = "nonterminal"
    TERMINAL = "terminal"
    PLACEHOLDER = "placeholder"
    WILDCARD = "wildcard"
    EMPTY = "empty"


@dataclass(frozen=True)
class PlaceholderSpec:
    """Category plus optional number of a query placeholder.

    Unnamed placeholders carry no name and never alias each other; named
    ones must bind consistently across the whole query.
    """

    category: str  # EXPR, ID, LT, OP, binOP, unOP
    name: int | None = None

    def label(self) -> str:
        return self.category if self.name is None else f"{self.category}<{self.name}>"


@dataclass(eq=False)
class TreeNode:
    """One parse-tree node.

    label is the rule name for nonterminals and the token text for
    terminals (placeholder and wildcard nodes carry their token spelling).
    Terminal-like kinds have no children.  Identity (not structure) is
    used for hashing so nodes can key mapping dicts.
    """

    label: str
    kind: NodeKind
    children: list["TreeNode"] = field(default_factory=list)
    placeholder: PlaceholderSpec | None = None
    span: tuple[int, int] | None = None  # (line, column) of the first token
    stmt_pos: bool = False  # wildcards only: statement vs expression position

    def is_leaf(self) -> bool:
        return not self.children


ROOT_LABEL = "stmt_seq"

STMT_LABELS = {
    "block",
    "if_stmt",
    "while_stmt",
    "return_stmt",
    "expr_stmt",
    "assign_stmt",
    "var_decl",
}
EXPR_LABELS = {"binary_expr", "unary_expr", "call_expr", "member_expr", "paren_expr"}

SNIPPET_MODE_CODE = "code"
SNIPPET_MODE_QUERY = "query"


@dataclass(frozen=True)
class Snippet:
    """A line sequence to parse, in code or query mode."""

    lines: tuple[str, ...]
    mode: str = SNIPPET_MODE_CODE

    @staticmethod
    def code(lines) -> "Snippet":
        return Snippet(tuple(lines), SNIPPET_MODE_CODE)

    @staticmethod
    def query(lines) -> "Snippet":
        return Snippet(tuple(lines), SNIPPET_MODE_QUERY)


def iter_nodes(root: TreeNode) -> Iterator[TreeNode]:
    """Pre-order traversal."""
    stack = [root]
    while stack:
        node = stack.pop()
        yield node
        stack.extend(reversed(node.children))


def render_tokens(root: TreeNode) -> list[str]:
    """Leaf labels (terminals, placeholders, wildcards, empty markers) in
    source order.  Joining them with single spaces re-lexes to the tree's
    token stream."""
    return [n.label for n in iter_nodes(root) if n.kind is not NodeKind.NONTERMINAL]


def render_text(root: TreeNode) -> str:
    return " ".join(render_tokens(root))


def terminal_labels(root: TreeNode) -> list[str]:
    """Labels of concrete terminal nodes only (no placeholders/wildcards)."""
    return [n.label for n in iter_nodes(root) if n.kind is NodeKind.TERMINAL]


def trees_equal(a: TreeNode, b: TreeNode) -> bool:
    """Structural equality on (label, kind, children); spans ignored."""
    if a.label != b.label or a.kind is not b.kind:
        return False
    if len(a.children) != len(b.children):
        return False
    return all(trees_equal(x, y) for x, y in zip(a.children, b.children))


def is_expression_node(node: TreeNode) -> bool:
    """True for subtrees that stand for an expression: expression
    nonterminals plus lone identifier/literal terminals."""
    if node.kind is NodeKind.NONTERMINAL:
        return node.label in EXPR_LABELS
    if node.kind is NodeKind.TERMINAL:
        return tk.terminal_category(node.label) in ("ID", "LT")
    if node.kind is NodeKind.PLACEHOLDER:
        return node.placeholder.category in ("EXPR", "ID", "LT")
    return node.kind is NodeKind.WILDCARD and not node.stmt_pos


def is_statement_node(node: TreeNode) -> bool:
    if node.kind is NodeKind.NONTERMINAL:
        return node.label in STMT_LABELS
    return node.kind is NodeKind.WILDCARD and node.stmt_pos


def is_empty_side(root: TreeNode) -> bool:
    """True when a parsed side denotes no code at all: the query empty
    marker, or a code side with zero tokens."""
    if root.kind is NodeKind.EMPTY:
        return True
    return root.label == ROOT_LABEL and not root.children
