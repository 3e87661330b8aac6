"""Seeded (change, query) pair generators for differential tests."""

from __future__ import annotations

import random

from dsx.engine import _abstract_side
from dsx.grammar import Query
from dsx.ingestion import CodeChange, Corpus

_SMALL_VARS = ("a", "b", "x", "y")
_SMALL_FUNCS = ("f", "g", "run")
_SMALL_LITS = ("1", "2", '"s"')


class SmallChangeFactory:
    """Changes of at most three statements, at most four tokens each, over
    a tiny identifier pool (so repeats and near-misses are frequent)."""

    def __init__(self, rng: random.Random):
        self.rng = rng

    def statement(self) -> list[str]:
        pick = self.rng.randrange(7)
        if pick == 0:
            return [self.rng.choice(_SMALL_FUNCS), "(", ")", ";"]
        if pick == 1:
            return [self.rng.choice(_SMALL_VARS), "=", self.rng.choice(_SMALL_LITS), ";"]
        if pick == 2:
            return [self.rng.choice(_SMALL_VARS), "=", self.rng.choice(_SMALL_VARS), ";"]
        if pick == 3:
            return [self.rng.choice(_SMALL_VARS), "+=", self.rng.choice(_SMALL_LITS), ";"]
        if pick == 4:
            return ["return", ";"]
        if pick == 5:
            return ["return", self.rng.choice(_SMALL_VARS), ";"]
        return ["++", self.rng.choice(_SMALL_VARS), ";"]

    def side(self) -> list[str]:
        n = self.rng.choices((1, 2, 3), weights=(4, 4, 2))[0]
        return [" ".join(self.statement()) for _ in range(n)]

    def change(self, change_id: int = 0) -> CodeChange:
        r = self.rng.random()
        old = [] if r < 0.06 else self.side()
        new = [] if (old and r > 0.94) else self.side()
        if not old and not new:
            new = self.side()
        if old == new:
            new = new + [" ".join(self.statement())]
        return CodeChange(change_id, "t", "t", "t", tuple(old), tuple(new))


_HANDCRAFTED = (
    Query(("ID();", "<...>", "ID();"), ("ID = LT;",)),
    Query(("ID.ID();",), ("_",)),
    Query(("EXPR;",), ("EXPR;",)),
    Query(("ID<1>();", "ID<1>();"), ("_",)),
    Query(("ID<1> = LT;",), ("ID<1> = LT;",)),
    Query(("x = EXPR<2>;",), ("y = EXPR<2>;",)),
    Query(("_",), ("ID();",)),
    Query(("<...>",), ("ID = EXPR;",)),
    Query(("return EXPR;",), ("return LT;",)),
    Query(("EXPR",), ("EXPR",)),
    Query(("ID OP LT;",), ("ID OP LT;",)),
    Query(("++ID<3>;",), ("ID<3> = LT;",)),
)


def _as_is(change: CodeChange) -> Query:
    return Query(
        change.old_lines if change.old_lines else ("_",),
        change.new_lines if change.new_lines else ("_",),
    )


def _strategy_query(change: CodeChange, rng: random.Random, p: float, fold: bool) -> Query:
    old_tree, new_tree = Corpus.parse_change(change)
    return Query(
        _abstract_side(old_tree, rng, p, fold),
        _abstract_side(new_tree, rng, p, fold),
    )


def _perturb(query: Query, rng: random.Random) -> Query:
    """Rename one concrete identifier/literal token in the query text."""
    sides = [list(query.old_lines), list(query.new_lines)]
    keywords = ("return", "if", "while", "else", "binOP", "unOP")
    spots = []
    for s, side in enumerate(sides):
        for i, line in enumerate(side):
            for j, tok in enumerate(line.split(" ")):
                if tok and (tok[0].islower() or tok[0].isdigit()) and tok not in keywords:
                    spots.append((s, i, j))
    if not spots:
        return query
    s, i, j = rng.choice(spots)
    toks = sides[s][i].split(" ")
    toks[j] = "zzz" if not toks[j][0].isdigit() else "777"
    sides[s][i] = " ".join(toks)
    return Query(tuple(sides[0]), tuple(sides[1]))


def _named_ify(query: Query, rng: random.Random) -> Query:
    """Replace every occurrence of one identifier with a named placeholder."""
    tokens = [
        tok
        for side in (query.old_lines, query.new_lines)
        for line in side
        for tok in line.split(" ")
        if tok and tok[0].islower() and tok not in ("return", "if", "while", "else",
                                                    "true", "false", "binOP", "unOP")
    ]
    if not tokens:
        return query
    target = rng.choice(tokens)
    name = f"ID<{rng.randrange(1, 4)}>"

    def sub(side):
        return tuple(
            " ".join(name if tok == target else tok for tok in line.split(" "))
            for line in side
        )

    return Query(sub(query.old_lines), sub(query.new_lines))


def _insert_wildcard(query: Query, rng: random.Random) -> Query:
    side = list(query.old_lines if rng.random() < 0.5 else query.new_lines)
    if not side or side == ["_"]:
        return query
    side.insert(rng.randrange(len(side) + 1), "<...>")
    if rng.random() < 0.5:
        return Query(tuple(side), query.new_lines)
    return Query(query.old_lines, tuple(side))


def generate_pairs(n: int, seed: int):
    """Yield n (change, query) pairs mixing matching and non-matching
    cases, deterministically in the seed."""
    rng = random.Random(seed)
    factory = SmallChangeFactory(rng)
    for i in range(n):
        change = factory.change(i)
        mode = rng.randrange(8)
        if mode == 0:
            query = _as_is(change)
        elif mode == 1:
            query = _strategy_query(change, rng, 0.25, False)
        elif mode == 2:
            query = _strategy_query(change, rng, 0.75, False)
        elif mode == 3:
            query = _strategy_query(change, rng, 0.95, True)
        elif mode == 4:
            query = _as_is(factory.change(i))  # cross pairing
        elif mode == 5:
            query = rng.choice(_HANDCRAFTED)
        elif mode == 6:
            query = _perturb(_as_is(change), rng)
        else:
            base = _strategy_query(change, rng, 0.5, False)
            query = _insert_wildcard(_named_ify(base, rng), rng)
        yield change, query
