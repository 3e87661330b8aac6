"""Differential tests: the matcher against the brute-force expansion
oracle, and pruning soundness against the matcher."""

from oracle import oracle_matches
from pairgen import generate_pairs

from dsx.matcher import matches, prune_by_leaves


def test_matcher_agrees_with_bruteforce_oracle():
    matched = 0
    for change, query in generate_pairs(1200, seed=101):
        got = matches(change, query).matched
        want = oracle_matches(change, query)
        assert got == want, (change, query)
        matched += got
    # The generator must exercise both outcomes heavily.
    assert 200 < matched < 1000


def test_every_positive_verifies_under_oracle():
    for change, query in generate_pairs(600, seed=55):
        result = matches(change, query)
        if result.matched:
            assert oracle_matches(change, query)


def test_pruning_never_discards_a_match():
    for change, query in generate_pairs(2000, seed=77):
        if not prune_by_leaves(change, query):
            assert not matches(change, query).matched, (change, query)
