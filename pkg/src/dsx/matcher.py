"""Exact matching of code changes against queries.

A change matches a query when both query sides expand into subtrees of
the corresponding change sides: placeholders bind subtrees of their
syntactic category, all occurrences of a named placeholder bind
structurally equal subtrees (shared across the old and new side),
wildcards absorb zero-or-more consecutive statements (statement position)
or at most one expression (expression position), and an ``_`` side
matches only an empty change side.

Anchoring: the query's top-level statement sequence may map to an
order-preserving subsequence of the sibling statements at any single
nesting level of the change tree; unmatched siblings at that level are
permitted, while unmatched nodes anywhere deeper require a wildcard.  A
query side that is a bare expression (no trailing ``;``) instead matches
any expression subtree of the change side.

The search is an exhaustive depth-first worklist, explored top-down and
left-to-right, returning the first witness; exploration is capped by a
configurable budget and reported as a non-match when exceeded.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Iterator

from dsx.grammar import (
    NodeKind,
    PlaceholderSpec,
    Query,
    TreeNode,
    is_empty_side,
    is_expression_node,
    is_statement_node,
    iter_nodes,
    render_text,
    terminal_labels,
    trees_equal,
)
from dsx.grammar import tokens as tk
from dsx.ingestion import CodeChange, Corpus

log = logging.getLogger(__name__)

DEFAULT_SEARCH_BUDGET = 10**6


@dataclass
class NodeMapping:
    """A witness: query-node to change-node pairs plus the subtrees bound
    by named placeholders."""

    pairs: dict[TreeNode, TreeNode] = field(default_factory=dict)
    bindings: dict[PlaceholderSpec, TreeNode] = field(default_factory=dict)

    def bindings_text(self) -> dict[str, str]:
        return {
            spec.label(): render_text(subtree)
            for spec, subtree in sorted(
                self.bindings.items(), key=lambda kv: (kv[0].category, kv[0].name)
            )
        }


@dataclass
class MatchResult:
    matched: bool
    witness: NodeMapping | None = None
    budget_exceeded: bool = False


class _BudgetExhausted(Exception):
    pass


class _Search:
    """Mutable search state: shared bindings, witness pairs, and the
    exploration budget."""

    def __init__(self, budget: int):
        self.bindings: dict[PlaceholderSpec, TreeNode] = {}
        self.pairs: dict[TreeNode, TreeNode] = {}
        self.remaining = budget

    def spend(self) -> None:
        self.remaining -= 1
        if self.remaining < 0:
            raise _BudgetExhausted


def matches(
    change: CodeChange, query: Query, budget: int = DEFAULT_SEARCH_BUDGET
) -> MatchResult:
    """Decide whether a change matches a query; parses both first."""
    old_c, new_c = Corpus.parse_change(change)
    old_q, new_q = query.parse()
    return match_trees(old_c, new_c, old_q, new_q, budget)


def match_trees(
    old_change: TreeNode,
    new_change: TreeNode,
    old_query: TreeNode,
    new_query: TreeNode,
    budget: int = DEFAULT_SEARCH_BUDGET,
) -> MatchResult:
    search = _Search(budget)
    try:
        for _ in _match_side(old_query, old_change, search):
            for _ in _match_side(new_query, new_change, search):
                witness = NodeMapping(dict(search.pairs), dict(search.bindings))
                return MatchResult(True, witness)
    except _BudgetExhausted:
        log.warning("match search budget (%d) exceeded; reporting non-match", budget)
        return MatchResult(False, budget_exceeded=True)
    return MatchResult(False)


def _match_side(q_root: TreeNode, c_root: TreeNode, search: _Search) -> Iterator[None]:
    if q_root.kind is NodeKind.EMPTY:
        if is_empty_side(c_root):
            yield
        return
    expr = _bare_expression(q_root)
    if expr is not None:
        for node in iter_nodes(c_root):
            if node.kind in (NodeKind.TERMINAL, NodeKind.NONTERMINAL) and (
                is_expression_node(node)
            ):
                yield from _match_node(expr, node, search)
        return
    for anchor in _anchor_lists(c_root):
        yield from _anchor_align(q_root.children, anchor, 0, 0, search)


def _bare_expression(q_root: TreeNode) -> TreeNode | None:
    """The expression of a bare-expression query side (a single
    expression statement with no ``;``), else None."""
    if len(q_root.children) != 1:
        return None
    stmt = q_root.children[0]
    if stmt.kind is not NodeKind.NONTERMINAL or stmt.label != "expr_stmt":
        return None
    if len(stmt.children) == 1:
        return stmt.children[0]
    return None


def _anchor_lists(c_root: TreeNode) -> Iterator[list[TreeNode]]:
    """Candidate sibling-statement lists, in pre-order: the root sequence,
    every block's statement list, and each single-statement body slot."""
    yield list(c_root.children)
    for node in iter_nodes(c_root):
        if node.kind is not NodeKind.NONTERMINAL:
            continue
        if node.label == "block":
            yield [ch for ch in node.children if is_statement_node(ch)]
        elif node.label == "if_stmt":
            if len(node.children) >= 5:
                yield [node.children[4]]
            if len(node.children) >= 7:
                yield [node.children[6]]
        elif node.label == "while_stmt":
            if len(node.children) >= 5:
                yield [node.children[4]]


def _anchor_align(
    q: list[TreeNode], c: list[TreeNode], qi: int, ci: int, search: _Search
) -> Iterator[None]:
    """Order-preserving subsequence alignment with free gaps; top-level
    wildcards are subsumed by the free gaps."""
    search.spend()
    if qi == len(q):
        yield
        return
    qn = q[qi]
    if qn.kind is NodeKind.WILDCARD:
        yield from _anchor_align(q, c, qi + 1, ci, search)
        return
    for j in range(ci, len(c)):
        for _ in _match_node(qn, c[j], search):
            yield from _anchor_align(q, c, qi + 1, j + 1, search)


def _match_node(qn: TreeNode, cn: TreeNode, search: _Search) -> Iterator[None]:
    search.spend()
    if qn.kind is NodeKind.PLACEHOLDER:
        spec = qn.placeholder
        if not _category_ok(spec, cn):
            return
        if spec.name is not None:
            bound = search.bindings.get(spec)
            if bound is not None:
                if not trees_equal(bound, cn):
                    return
                search.pairs[qn] = cn
                yield
                search.pairs.pop(qn, None)
                return
            search.bindings[spec] = cn
            search.pairs[qn] = cn
            yield
            search.bindings.pop(spec, None)
            search.pairs.pop(qn, None)
            return
        search.pairs[qn] = cn
        yield
        search.pairs.pop(qn, None)
        return
    if qn.kind is NodeKind.TERMINAL:
        if cn.kind is NodeKind.TERMINAL and cn.label == qn.label:
            search.pairs[qn] = cn
            yield
            search.pairs.pop(qn, None)
        return
    if qn.kind is NodeKind.NONTERMINAL:
        if cn.kind is not NodeKind.NONTERMINAL or cn.label != qn.label:
            return
        c_children = cn.children
        if (
            qn.label == "block"
            and _is_open_block(qn)
            and not _is_open_block(cn)
        ):
            # The query's unmatched '{' closes implicitly at snippet end,
            # so a closed change block may keep its trailing '}'.
            c_children = cn.children[:-1]
        search.pairs[qn] = cn
        yield from _align(qn.children, c_children, 0, 0, search)
        search.pairs.pop(qn, None)
        return
    # Wildcards are consumed by sequence alignment; empty markers never
    # appear below a root.
    return


def _is_open_block(node: TreeNode) -> bool:
    if not node.children:
        return True
    last = node.children[-1]
    return not (last.kind is NodeKind.TERMINAL and last.label == "}")


def _align(
    q: list[TreeNode], c: list[TreeNode], qi: int, ci: int, search: _Search
) -> Iterator[None]:
    """Exact child alignment: every change child must be matched, gaps are
    possible only where the query has a wildcard."""
    search.spend()
    if qi == len(q):
        if ci == len(c):
            yield
        return
    qn = q[qi]
    if qn.kind is NodeKind.WILDCARD:
        limit = (len(c) - ci) if qn.stmt_pos else min(1, len(c) - ci)
        absorb_ok = is_statement_node if qn.stmt_pos else is_expression_node
        taken = 0
        while True:
            yield from _align(q, c, qi + 1, ci + taken, search)
            if taken >= limit or not absorb_ok(c[ci + taken]):
                return
            taken += 1
    if ci == len(c):
        return
    for _ in _match_node(qn, c[ci], search):
        yield from _align(q, c, qi + 1, ci + 1, search)


def _category_ok(spec: PlaceholderSpec, cn: TreeNode) -> bool:
    category = spec.category
    if category == "EXPR":
        return cn.kind in (NodeKind.TERMINAL, NodeKind.NONTERMINAL) and (
            is_expression_node(cn)
        )
    if cn.kind is not NodeKind.TERMINAL:
        return False
    if category == "ID":
        return tk.terminal_category(cn.label) == "ID"
    if category == "LT":
        return tk.terminal_category(cn.label) == "LT"
    if category == "OP":
        return cn.label in tk.ASSIGN_OPS
    if category == "binOP":
        return cn.label in tk.BINARY_OPS
    if category == "unOP":
        return cn.label in tk.UNARY_OPS
    return False


def required_leaf_tokens(tree: TreeNode) -> frozenset[str]:
    """Concrete terminal tokens a query side demands; placeholder,
    wildcard, and empty-marker nodes contribute nothing."""
    return frozenset(terminal_labels(tree))


def prune_by_leaves(change: CodeChange, query: Query) -> bool:
    """Leaf-token prefilter: False means the change certainly cannot match
    (some concrete query token is absent from the same side of the
    change); True means it may match."""
    old_c, new_c = Corpus.parse_change(change)
    old_q, new_q = query.parse()
    return prune_with_token_sets(
        required_leaf_tokens(old_q),
        required_leaf_tokens(new_q),
        frozenset(terminal_labels(old_c)),
        frozenset(terminal_labels(new_c)),
    )


def prune_with_token_sets(
    old_required: frozenset[str],
    new_required: frozenset[str],
    old_present: frozenset[str],
    new_present: frozenset[str],
) -> bool:
    return old_required <= old_present and new_required <= new_present
