"""Search pipeline: parse -> featurize -> retrieve -> prune -> match -> rank.

Also provides the exhaustive linear mode (ground truth), recall
measurement, and the four query-generation strategies used to build
ground-truth query sets.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from dsx.errors import EmptyCorpus, IndexMismatch
from dsx.features import (
    DEFAULT_VECTOR_LENGTH,
    _vector_from_trees,
    validate_vector_length,
)
from dsx.grammar import NodeKind, Query, TreeNode, tokenize
from dsx.index import DEFAULT_K, VectorIndex, retrieve
from dsx.ingestion import CodeChange, Corpus
from dsx.matcher import (
    DEFAULT_SEARCH_BUDGET,
    match_trees,
    prune_with_token_sets,
    required_leaf_tokens,
)

MODE_INDEXED = "indexed"
MODE_EXHAUSTIVE = "exhaustive"

STRATEGIES = ("as-is", "less", "more", "generalized")
_STRATEGY_PROBABILITY = {"less": 0.25, "more": 0.75, "generalized": 0.95}


@dataclass
class SearchConfig:
    k: int = DEFAULT_K
    l: int = DEFAULT_VECTOR_LENGTH
    max_results: int = 10
    search_budget: int = DEFAULT_SEARCH_BUDGET
    mode: str = MODE_INDEXED
    depth: int = 1

    def validate(self) -> None:
        if self.k < 1:
            raise ValueError("k must be >= 1")
        validate_vector_length(self.l)
        if self.max_results < 1:
            raise ValueError("max_results must be >= 1")
        if self.mode not in (MODE_INDEXED, MODE_EXHAUSTIVE):
            raise ValueError(f"unknown mode {self.mode!r}")


@dataclass
class SearchResult:
    change: CodeChange
    rank: int
    distance: float | None
    bindings: dict[str, str]


def search(
    query: Query,
    config: SearchConfig,
    corpus: Corpus,
    index: VectorIndex | None = None,
) -> list[SearchResult]:
    """Run one search.  Indexed mode walks the k retrieved candidates in
    rank order, pruning then matching, and stops at max_results;
    exhaustive mode scans the whole corpus and returns every match."""
    config.validate()
    old_q, new_q = query.parse()
    old_required = required_leaf_tokens(old_q)
    new_required = required_leaf_tokens(new_q)

    def try_change(change_id: int):
        old_present, new_present = corpus.token_sets(change_id)
        if not prune_with_token_sets(
            old_required, new_required, old_present, new_present
        ):
            return None
        old_c, new_c = corpus.trees(change_id)
        result = match_trees(old_c, new_c, old_q, new_q, config.search_budget)
        if not result.matched:
            return None
        return result.witness.bindings_text()

    results: list[SearchResult] = []
    if config.mode == MODE_EXHAUSTIVE:
        # True linear scan: the indexing-and-retrieval machinery is off,
        # including the corpus-level caches it warms up, so every change
        # is read from its raw lines.
        for change in corpus:
            old_present = frozenset(t.text for t in tokenize(list(change.old_lines)))
            new_present = frozenset(t.text for t in tokenize(list(change.new_lines)))
            if not prune_with_token_sets(
                old_required, new_required, old_present, new_present
            ):
                continue
            old_c, new_c = Corpus.parse_change(change)
            result = match_trees(old_c, new_c, old_q, new_q, config.search_budget)
            if result.matched:
                results.append(
                    SearchResult(
                        change, len(results) + 1, None,
                        result.witness.bindings_text(),
                    )
                )
        return results

    if index is None:
        raise ValueError("indexed mode needs an index")
    if index.l != config.l:
        raise IndexMismatch(f"index has l={index.l}, config has l={config.l}")
    v_query = _vector_from_trees(old_q, new_q, config.l, config.depth, drop_abstract=True)
    for candidate in retrieve(index, v_query, config.k):
        bindings = try_change(candidate.change_id)
        if bindings is not None:
            results.append(
                SearchResult(
                    corpus.get(candidate.change_id),
                    len(results) + 1,
                    candidate.distance,
                    bindings,
                )
            )
            if len(results) >= config.max_results:
                break
    return results


@dataclass
class RecallStats:
    per_query: list[float] = field(default_factory=list)
    truth_sizes: list[int] = field(default_factory=list)
    skipped_empty_truth: int = 0

    @property
    def mean(self) -> float:
        return sum(self.per_query) / len(self.per_query) if self.per_query else 0.0


def measure_recall(
    queries: list[Query],
    corpus: Corpus,
    config: SearchConfig,
    index: VectorIndex | None = None,
) -> RecallStats:
    """Per-query recall of the indexed pipeline against exhaustive-mode
    ground truth, with max_results lifted to k.  Queries whose ground
    truth is empty are skipped."""
    if index is None:
        from dsx.index import build_index

        index = build_index(corpus, config.l, config.depth)
    stats = RecallStats()
    exhaustive = SearchConfig(
        k=config.k, l=config.l, max_results=config.max_results,
        search_budget=config.search_budget, mode=MODE_EXHAUSTIVE, depth=config.depth,
    )
    lifted = SearchConfig(
        k=config.k, l=config.l, max_results=config.k,
        search_budget=config.search_budget, mode=MODE_INDEXED, depth=config.depth,
    )
    for query in queries:
        truth = {r.change.id for r in search(query, exhaustive, corpus)}
        if not truth:
            stats.skipped_empty_truth += 1
            continue
        found = {r.change.id for r in search(query, lifted, corpus, index)}
        stats.per_query.append(len(found & truth) / len(truth))
        stats.truth_sizes.append(len(truth))
    return stats


def result_size_stats(query: Query, results: list[SearchResult]) -> dict:
    """Per-query result counts and character sizes of query vs results."""
    query_chars = sum(len(line) for line in query.old_lines) + sum(
        len(line) for line in query.new_lines
    )
    result_chars = [
        sum(len(line) for line in r.change.old_lines)
        + sum(len(line) for line in r.change.new_lines)
        for r in results
    ]
    return {
        "result_count": len(results),
        "query_chars": query_chars,
        "mean_result_chars": (
            sum(result_chars) / len(result_chars) if result_chars else 0.0
        ),
    }


def generate_ground_truth_queries(
    corpus: Corpus, strategy: str, n: int, seed: int = 0
) -> list[Query]:
    """Sample n changes uniformly and derive one query from each.

    as-is copies both sides verbatim; less/more/generalized replace each
    identifier, operator, and literal with its placeholder independently
    (p = 0.25 / 0.75 / 0.95); generalized additionally folds maximal
    fully-replaced expression subtrees into single EXPR placeholders.
    """
    if strategy not in STRATEGIES:
        raise ValueError(f"unknown strategy {strategy!r}; expected one of {STRATEGIES}")
    if len(corpus) == 0:
        raise EmptyCorpus("cannot sample queries from an empty corpus")
    rng = random.Random(seed)
    if n <= len(corpus):
        ids = rng.sample(range(len(corpus)), n)
    else:
        ids = [rng.randrange(len(corpus)) for _ in range(n)]
    queries = []
    for change_id in ids:
        change = corpus.get(change_id)
        if strategy == "as-is":
            queries.append(
                Query(
                    change.old_lines if change.old_lines else ("_",),
                    change.new_lines if change.new_lines else ("_",),
                )
            )
            continue
        p = _STRATEGY_PROBABILITY[strategy]
        fold = strategy == "generalized"
        old_tree, new_tree = corpus.trees(change_id)
        queries.append(
            Query(
                _abstract_side(old_tree, rng, p, fold),
                _abstract_side(new_tree, rng, p, fold),
            )
        )
    return queries


def _abstract_side(tree: TreeNode, rng: random.Random, p: float, fold: bool):
    if tree.label == "stmt_seq" and not tree.children:
        return ("_",)
    tokens = _AbstractionWalk(rng, p, fold).statements(tree.children)
    return (" ".join(tokens),)


class _AbstractionWalk:
    """Renders a code tree back to query tokens, replacing identifiers,
    operators, and literals with placeholders by coin flip, optionally
    folding fully-replaced expression subtrees into EXPR."""

    def __init__(self, rng: random.Random, p: float, fold: bool):
        self.rng = rng
        self.p = p
        self.fold = fold

    def _flip(self) -> bool:
        return self.rng.random() < self.p

    def statements(self, nodes: list[TreeNode]) -> list[str]:
        tokens: list[str] = []
        for node in nodes:
            tokens.extend(self.statement(node))
        return tokens

    def statement(self, node: TreeNode) -> list[str]:
        if node.kind is NodeKind.TERMINAL:  # orphan '}' at the root
            return [node.label]
        label = node.label
        ch = node.children
        if label == "block":
            tokens = ["{"]
            body = ch[1:]
            closed = bool(body) and body[-1].kind is NodeKind.TERMINAL
            if closed:
                body = body[:-1]
            tokens.extend(self.statements(body))
            if closed:
                tokens.append("}")
            return tokens
        if label in ("if_stmt", "while_stmt"):
            tokens = [ch[0].label, "(", *self.expr_slot(ch[2]), ")"]
            tokens.extend(self.statement(ch[4]))
            if len(ch) >= 7:  # else branch
                tokens.append("else")
                tokens.extend(self.statement(ch[6]))
            return tokens
        if label == "return_stmt":
            tokens = ["return"]
            if len(ch) == 3:
                tokens.extend(self.expr_slot(ch[1]))
            tokens.append(";")
            return tokens
        if label == "expr_stmt":
            tokens = self.expr_slot(ch[0])
            if len(ch) == 2:
                tokens.append(";")
            return tokens
        if label == "assign_stmt":
            tokens = self.expr_slot(ch[0])
            tokens.append("OP" if self._flip() else ch[1].label)
            tokens.extend(self.expr_slot(ch[2]))
            tokens.append(";")
            return tokens
        if label == "var_decl":
            tokens = [
                "ID" if self._flip() else ch[0].label,
                "ID" if self._flip() else ch[1].label,
                "OP" if self._flip() else ch[2].label,
                *self.expr_slot(ch[3]),
                ";",
            ]
            return tokens
        raise AssertionError(f"unexpected statement label {label}")

    def expr_slot(self, node: TreeNode) -> list[str]:
        tokens, replaced_all = self.expression(node)
        if self.fold and replaced_all:
            return ["EXPR"]
        return tokens

    def expression(self, node: TreeNode) -> tuple[list[str], bool]:
        if node.kind is NodeKind.TERMINAL:
            replace = self._flip()
            if not replace:
                return [node.label], False
            category = "LT" if _is_literal(node.label) else "ID"
            return [category], True
        label = node.label
        ch = node.children
        if label == "binary_expr":
            left, lf = self.expression(ch[0])
            op_replaced = self._flip()
            right, rf = self.expression(ch[2])
            op = "binOP" if op_replaced else ch[1].label
            return left + [op] + right, lf and op_replaced and rf
        if label == "unary_expr":
            op_replaced = self._flip()
            operand, of = self.expression(ch[1])
            op = "unOP" if op_replaced else ch[0].label
            return [op] + operand, op_replaced and of
        if label == "call_expr":
            callee, cf = self.expression(ch[0])
            args: list[str] = []
            all_folded = cf
            for arg in ch[2].children:
                if arg.kind is NodeKind.TERMINAL and arg.label == ",":
                    args.append(",")
                    continue
                arg_tokens, af = self.expression(arg)
                if self.fold and af:
                    arg_tokens = ["EXPR"]
                args.extend(arg_tokens)
                all_folded = all_folded and af
            return callee + ["(", *args, ")"], all_folded
        if label == "member_expr":
            obj, of = self.expression(ch[0])
            field_replaced = self._flip()
            name = "ID" if field_replaced else ch[2].label
            return obj + [".", name], of and field_replaced
        if label == "paren_expr":
            inner, f = self.expression(ch[1])
            return ["(", *inner, ")"], f
        raise AssertionError(f"unexpected expression label {label}")


def _is_literal(text: str) -> bool:
    return text[0].isdigit() or text.startswith('"') or text in ("true", "false")
