"""Matcher semantics tests (the differential suite lives in
test_matcher_oracle.py)."""

import pytest

from conftest import make_change

from dsx.grammar import Query
from dsx.matcher import matches, prune_by_leaves


def test_motivating_example_bindings(motivating_corpus, motivating_query):
    result = matches(motivating_corpus.get(1), motivating_query)
    assert result.matched
    assert result.witness.bindings_text() == {
        "EXPR<1>": "x",
        "EXPR<2>": "y",
        "ID<1>": "isValidPoint",
    }


def test_motivating_example_rejects_other_changes(motivating_corpus, motivating_query):
    assert not matches(motivating_corpus.get(0), motivating_query).matched
    assert not matches(motivating_corpus.get(2), motivating_query).matched


def test_table1_pairs_match(table1_pairs):
    for change, query in table1_pairs:
        assert matches(change, query).matched, (change, query)


def test_table1_negatives_do_not_match(table1_negatives):
    for change, query in table1_negatives:
        assert not matches(change, query).matched, (change, query)


def test_wildcard_between_calls():
    change = make_change(0, ["foo();", "bar();", "baz();"], ["x = 5;", "foo();", "y = 7;"])
    query = Query(("ID();", "<...>", "ID();"), ("ID = LT;",))
    assert matches(change, query).matched


def test_any_change_matches_its_as_is_query(motivating_corpus):
    for change in motivating_corpus:
        query = Query(change.old_lines, change.new_lines)
        assert matches(change, query).matched


def test_unnamed_placeholders_are_independent():
    change = make_change(0, ["foo();", "bar();"], ["x = 1;"])
    assert matches(change, Query(("ID();", "ID();"), ("ID = LT;",))).matched
    assert not matches(change, Query(("ID<1>();", "ID<1>();"), ("ID = LT;",))).matched


def test_named_binding_shared_across_sides():
    query = Query(("run(EXPR<0>);",), ("stop(EXPR<0>);",))
    assert matches(make_change(0, ["run(k);"], ["stop(k);"]), query).matched
    assert not matches(make_change(0, ["run(k);"], ["stop(j);"]), query).matched


def test_named_binding_metamorphic_break(table1_pairs):
    change, query = table1_pairs[2]
    perturbed = make_change(
        change.id, change.old_lines, ("runNow(j);",)
    )
    assert matches(change, query).matched
    assert not matches(perturbed, query).matched


def test_underscore_matches_only_empty_side():
    query = Query(("ID.ID();",), ("_",))
    assert matches(make_change(0, ["evt.trig();"], []), query).matched
    assert not matches(make_change(0, ["evt.trig();"], ["x = 1;"]), query).matched


def test_anchor_subsequence_allows_gaps_at_top_level():
    change = make_change(0, ["a();", "x = 1;", "b();"], ["done();"])
    assert matches(change, Query(("a();", "b();"), ("done();",))).matched


def test_nested_unmatched_sibling_requires_wildcard():
    change = make_change(0, ["if (c) {", "  a();", "  b();", "}"], ["done();"])
    no_wildcard = Query(("if (c) {", "  a();", "}"), ("done();",))
    with_wildcard = Query(("if (c) {", "  a();", "  <...>", "}"), ("done();",))
    assert not matches(change, no_wildcard).matched
    assert matches(change, with_wildcard).matched


def test_query_matches_statements_inside_blocks():
    change = make_change(0, ["if (ready) {", "  run(x);", "}"], ["stop();"])
    assert matches(change, Query(("run(EXPR);",), ("stop();",))).matched


def test_open_query_block_matches_closed_change_block():
    change = make_change(0, ["if (c) {", "  a();", "}"], ["stop();"])
    query = Query(("if (c) {", "  <...>"), ("stop();",))
    assert matches(change, query).matched


def test_closed_query_block_requires_closing_brace():
    change = make_change(0, ["if (c) {", "  a();"], ["stop();"])  # open change
    query = Query(("if (c) {", "  a();", "}"), ("stop();",))
    assert not matches(change, query).matched


def test_bare_expression_query_matches_nested_expression():
    change = make_change(0, ["if (count(x) > 0) {", "  y = 1;", "}"], ["stop();"])
    assert matches(change, Query(("count(EXPR)",), ("stop();",))).matched
    # The statement form does not match: count(x) is not a statement.
    assert not matches(change, Query(("count(EXPR);",), ("stop();",))).matched


def test_expression_wildcard_zero_or_one():
    query = Query(("run(<...>);",), ("_",))
    assert matches(make_change(0, ["run();"], []), query).matched
    assert matches(make_change(0, ["run(x);"], []), query).matched
    assert not matches(make_change(0, ["run(x, y);"], []), query).matched


def test_category_containment():
    # EXPR binds identifiers, literals, and compound expressions.
    assert matches(make_change(0, ["x = a + 1;"], []), Query(("x = EXPR;",), ("_",))).matched
    assert matches(make_change(0, ["x = a;"], []), Query(("x = EXPR;",), ("_",))).matched
    # ID binds only identifiers, LT only literals.
    assert not matches(make_change(0, ["x = 5;"], []), Query(("x = ID;",), ("_",))).matched
    assert not matches(make_change(0, ["x = a;"], []), Query(("x = LT;",), ("_",))).matched
    assert matches(make_change(0, ["x = true;"], []), Query(("x = LT;",), ("_",))).matched
    # Operator categories.
    assert matches(make_change(0, ["x += 1;"], []), Query(("ID OP LT;",), ("_",))).matched
    assert matches(make_change(0, ["y = a < b;"], []), Query(("y = a binOP b;",), ("_",))).matched
    assert matches(make_change(0, ["z = !done;"], []), Query(("z = unOP ID;",), ("_",))).matched
    assert not matches(make_change(0, ["z = a + b;"], []), Query(("z = unOP ID;",), ("_",))).matched


def test_named_placeholders_scoped_by_category():
    # ID<1> and EXPR<1> are distinct keys and may bind different entities.
    query = Query(("ID<1>(EXPR<1>);",), ("ID<1>(EXPR<1>, EXPR<1>);",))
    change = make_change(0, ["run(a);"], ["run(a, a);"])
    assert matches(change, query).matched


def test_parenthesization_matters_for_bindings():
    query = Query(("x = EXPR<1>;",), ("y = EXPR<1>;",))
    assert matches(make_change(0, ["x = (a);"], ["y = (a);"]), query).matched
    assert not matches(make_change(0, ["x = (a);"], ["y = a;"]), query).matched


def test_search_budget_reported():
    # A wildcard-heavy query on a long flat change explores many mappings.
    change = make_change(0, [" ".join(f"v{i} = {i};" for i in range(30))],
                         ["done();"])
    query = Query(
        ("<...> " * 6 + "ID = LT; " + "<...> " * 6 + "ID = LT;",),
        ("done();",),
    )
    full = matches(change, query)
    assert full.matched and not full.budget_exceeded
    tiny = matches(change, query, budget=50)
    assert not tiny.matched and tiny.budget_exceeded


def test_prune_by_leaves_examples(motivating_corpus, motivating_query):
    q = Query(("myVar = LT;",), ("myVar = LT;",))
    assert not prune_by_leaves(make_change(0, ["x = 5;"], ["x = 6;"]), q)
    assert prune_by_leaves(make_change(0, ["myVar = 5;"], ["myVar = 6;"]), q)
    assert prune_by_leaves(make_change(0, ["x = 1;"], ["x = 2;"]),
                           Query(("EXPR",), ("EXPR",)))
    assert not prune_by_leaves(motivating_corpus.get(2), motivating_query)


def test_match_result_witness_iff_matched(motivating_corpus, motivating_query):
    hit = matches(motivating_corpus.get(1), motivating_query)
    miss = matches(motivating_corpus.get(0), motivating_query)
    assert hit.matched and hit.witness is not None
    assert not miss.matched and miss.witness is None


def test_witness_pairs_are_injective(motivating_corpus, motivating_query):
    witness = matches(motivating_corpus.get(1), motivating_query).witness
    values = list(witness.pairs.values())
    assert len(values) == len(set(id(v) for v in values))
