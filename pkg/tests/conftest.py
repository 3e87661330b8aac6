"""Shared fixtures: the motivating-example corpus/query and Table-1 pairs."""

from __future__ import annotations

import pytest

from dsx.grammar import Query
from dsx.ingestion import CodeChange, Corpus


def make_change(change_id, old, new, repo="demo", commit="c0", file="Main.java"):
    return CodeChange(change_id, repo, commit, file, tuple(old), tuple(new))


@pytest.fixture(scope="session")
def motivating_corpus() -> Corpus:
    """The three changes of the argument-swap walkthrough."""
    corpus = Corpus()
    corpus.changes.extend(
        [
            make_change(0, ["if(check(a - 1, b)){"], ["if(check(a - 1, c)){"]),
            make_change(1, ["if(isValidPoint(x, y)){"], ["if(isValidPoint(y, x)){"]),
            make_change(
                2,
                ["while(var > k - 1){", "  sum += count(var);"],
                ["while(var > k){", "  sum += 2 * count(var);"],
            ),
        ]
    )
    return corpus


@pytest.fixture(scope="session")
def motivating_query() -> Query:
    return Query(
        ("if(ID<1>(EXPR<1>, EXPR<2>)){", "  <...>"),
        ("if(ID<1>(EXPR<2>, EXPR<1>)){", "  <...>"),
    )


@pytest.fixture(scope="session")
def table1_pairs():
    """(change, query) pairs that must match, straight from the query-language
    examples table."""
    return [
        (
            make_change(0, ["evt.trig();"], []),
            Query(("ID.ID();",), ("_",)),
        ),
        (
            make_change(1, ["if (x > 0)", "  y = 1;"], ["if (x < 0)", "  y = 0;"]),
            Query(("if (EXPR)", "  ID OP LT;"), ("if (EXPR)", "  ID OP LT;")),
        ),
        (
            make_change(2, ["run(k);", "now(k);"], ["runNow(k);"]),
            Query(("run(EXPR<0>);", "now(EXPR<0>);"), ("runNow(EXPR<0>);",)),
        ),
    ]


@pytest.fixture(scope="session")
def table1_negatives():
    """Perturbed variants of the same pairs that must not match."""
    return [
        # Row 1: a call with an argument cannot match ID.ID().
        (
            make_change(0, ["evt.trig(x);"], []),
            Query(("ID.ID();",), ("_",)),
        ),
        # Row 2: new side assigns an identifier, not a literal.
        (
            make_change(1, ["if (x > 0)", "  y = 1;"], ["if (x < 0)", "  y = z;"]),
            Query(("if (EXPR)", "  ID OP LT;"), ("if (EXPR)", "  ID OP LT;")),
        ),
        # Row 3: arguments k/j break EXPR<0> consistency.
        (
            make_change(2, ["run(k);", "now(j);"], ["runNow(k);"]),
            Query(("run(EXPR<0>);", "now(EXPR<0>);"), ("runNow(EXPR<0>);",)),
        ),
    ]
