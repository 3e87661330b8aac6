"""Deterministic synthetic change corpora for tests, eval, and benchmarks.

Changes are built as token lists (valid by construction), mutated at the
token/statement level, and rendered one statement per line.  Equal seeds
give identical corpora.
"""

from __future__ import annotations

import random

from dsx.ingestion import CodeChange, Corpus

_VARS = (
    "i j k n m x y z count sum total value val flag done ok size idx pos cur "
    "buf data evt msg item node res tmp obj key acc len width height depth "
    "score rate limit step start end left right top low high mid rem quot"
).split()
_FUNCS = (
    "run stop init close open read write update check reset notify send recv "
    "parse load save trig emit flush log get set add remove clear push pop "
    "start finish apply render draw scale shift merge split count_items wait"
).split()
_TYPES = "int long bool float str byte".split()
_STRINGS = ('"ok"', '"err"', '"done"', '"name"', '"empty"', '"x"')
_BIN_OPS = ("+", "-", "*", "/", "%", "<", ">", "<=", ">=", "==", "!=", "&&", "||")
_CMP_OPS = ("<", ">", "<=", ">=", "==", "!=")
_ASSIGN_OPS = ("=", "+=", "-=")

Statement = list[str]


class ChangeFactory:
    """Seeded generator of random MiniLang changes."""

    def __init__(self, seed: int, ident_extra: int = 60):
        self.rng = random.Random(seed)
        self.vars = list(_VARS) + [f"v{i}" for i in range(ident_extra)]
        self.funcs = list(_FUNCS) + [f"fn{i}" for i in range(ident_extra)]

    # Token-level building blocks.

    def var(self) -> str:
        return self.rng.choice(self.vars)

    def func(self) -> str:
        return self.rng.choice(self.funcs)

    def literal(self) -> str:
        r = self.rng.random()
        if r < 0.70:
            return str(self.rng.randrange(0, 1000))
        if r < 0.85:
            return self.rng.choice(_STRINGS)
        return self.rng.choice(("true", "false"))

    def atom(self) -> list[str]:
        return [self.var()] if self.rng.random() < 0.6 else [self.literal()]

    def expr(self, depth: int = 1) -> list[str]:
        r = self.rng.random()
        if depth <= 0 or r < 0.45:
            return self.atom()
        if r < 0.65:
            return self.atom() + [self.rng.choice(_BIN_OPS)] + self.atom()
        if r < 0.80:
            return self.call(depth - 1)
        if r < 0.90:
            return ["(", *self.atom(), self.rng.choice(_BIN_OPS), *self.atom(), ")"]
        return [self.rng.choice(("!", "-", "++", "--")), self.var()]

    def call(self, depth: int = 0) -> list[str]:
        tokens = [self.func()]
        if self.rng.random() < 0.25:
            tokens = [self.var(), ".", self.func()]
        tokens.append("(")
        for i in range(self.rng.randrange(0, 3)):
            if i:
                tokens.append(",")
            tokens.extend(self.expr(depth))
        tokens.append(")")
        return tokens

    def condition(self) -> list[str]:
        if self.rng.random() < 0.25:
            return [self.var()]
        return [*self.atom(), self.rng.choice(_CMP_OPS), *self.atom()]

    # Statements (each rendered as one line).

    def statement(self, allow_compound: bool = True) -> list[Statement]:
        """One statement as a list of lines (token lists)."""
        r = self.rng.random()
        if r < 0.30:
            return [self.call() + [";"]]
        if r < 0.52:
            return [[self.var(), self.rng.choice(_ASSIGN_OPS), *self.expr(), ";"]]
        if r < 0.62:
            return [[self.rng.choice(_TYPES), self.var(), "=", *self.expr(), ";"]]
        if r < 0.72:
            body = ["return", *self.expr(), ";"] if self.rng.random() < 0.8 else ["return", ";"]
            return [body]
        if not allow_compound:
            return [self.call() + [";"]]
        keyword = "if" if r < 0.88 else "while"
        header = [keyword, "(", *self.condition(), ")"]
        inner = self.statement(allow_compound=False)
        style = self.rng.random()
        if style < 0.40:  # closed block
            return [header + ["{"], *inner, ["}"]]
        if style < 0.65:  # single statement body, no braces
            return [header + inner[0]]
        if style < 0.85:  # open block with body (hunk cut below)
            return [header + ["{"], *inner]
        return [header + ["{"]]  # bare open block line

    def side(self, n_statements: int) -> list[Statement]:
        lines: list[Statement] = []
        for _ in range(n_statements):
            lines.extend(self.statement())
        return lines

    # Mutations (token lists stay parseable by construction).

    def mutate(self, lines: list[Statement]) -> list[Statement]:
        new_lines = [list(line) for line in lines]
        ops = [self._mut_rename, self._mut_literal, self._mut_operator,
               self._mut_insert, self._mut_delete, self._mut_replace]
        self.rng.shuffle(ops)
        n_edits = 1 if self.rng.random() < 0.7 else 2
        applied = 0
        for op in ops:
            if applied >= n_edits:
                break
            if op(new_lines):
                applied += 1
        if applied == 0 or new_lines == lines:
            new_lines.append(self.statement(allow_compound=False)[0])
        return new_lines

    def _ident_positions(self, lines: list[Statement]) -> list[tuple[int, int]]:
        out = []
        for i, line in enumerate(lines):
            for j, tok in enumerate(line):
                if tok[0].isalpha() and tok not in (
                    "if", "else", "while", "return", "true", "false",
                ):
                    out.append((i, j))
        return out

    def _mut_rename(self, lines: list[Statement]) -> bool:
        spots = self._ident_positions(lines)
        if not spots:
            return False
        i, j = self.rng.choice(spots)
        old = lines[i][j]
        pool = self.funcs if j + 1 < len(lines[i]) and lines[i][j + 1] == "(" else self.vars
        new = self.rng.choice([t for t in pool if t != old] or [old + "_2"])
        if self.rng.random() < 0.3:  # rename every occurrence
            for line in lines:
                for jj, tok in enumerate(line):
                    if tok == old:
                        line[jj] = new
        else:
            lines[i][j] = new
        return True

    def _mut_literal(self, lines: list[Statement]) -> bool:
        spots = [
            (i, j)
            for i, line in enumerate(lines)
            for j, tok in enumerate(line)
            if tok[0].isdigit() or tok.startswith('"')
        ]
        if not spots:
            return False
        i, j = self.rng.choice(spots)
        old = lines[i][j]
        for _ in range(8):
            new = self.literal()
            if new != old:
                lines[i][j] = new
                return True
        return False

    def _mut_operator(self, lines: list[Statement]) -> bool:
        # Binary position only: the token before must end an operand
        # (keywords like `return` do not).
        def ends_operand(tok: str) -> bool:
            if tok in ("if", "else", "while", "return"):
                return False
            return tok[0].isalnum() or tok.startswith('"') or tok == ")"

        spots = []
        for i, line in enumerate(lines):
            for j, tok in enumerate(line):
                if tok in _BIN_OPS and j > 0 and ends_operand(line[j - 1]):
                    spots.append((i, j))
        if not spots:
            return False
        i, j = self.rng.choice(spots)
        choices = [op for op in _BIN_OPS if op != lines[i][j]]
        lines[i][j] = self.rng.choice(choices)
        return True

    def _mut_insert(self, lines: list[Statement]) -> bool:
        pos = self.rng.randrange(0, len(lines) + 1)
        lines[pos:pos] = self.statement(allow_compound=False)
        return True

    def _safe_spots(self, lines: list[Statement]) -> list[int]:
        # Removing or replacing a block-header line would orphan a later
        # '}' mid-stream, which does not parse; leave headers alone.
        return [i for i, line in enumerate(lines) if line[-1] != "{"]

    def _mut_delete(self, lines: list[Statement]) -> bool:
        if len(lines) < 2:
            return False
        spots = self._safe_spots(lines)
        if not spots:
            return False
        del lines[self.rng.choice(spots)]
        return True

    def _mut_replace(self, lines: list[Statement]) -> bool:
        spots = self._safe_spots(lines)
        if not spots:
            return False
        lines[self.rng.choice(spots)] = self.statement(allow_compound=False)[0]
        return True

    # Whole changes.

    def change_lines(self) -> tuple[list[str], list[str]]:
        r = self.rng.random()
        if r < 0.05:  # pure insertion
            return [], [" ".join(t) for t in self.side(self.rng.randrange(1, 3))]
        if r < 0.10:  # pure removal
            return [" ".join(t) for t in self.side(self.rng.randrange(1, 3))], []
        old = self.side(self.rng.choices((1, 2, 3), weights=(5, 3, 2))[0])
        new = self.mutate(old)
        if new == old:
            new = old + [self.statement(allow_compound=False)[0]]
        return [" ".join(t) for t in old], [" ".join(t) for t in new]


def make_corpus(n: int, seed: int = 0) -> Corpus:
    """n synthetic changes with dense ids, deterministic in the seed."""
    factory = ChangeFactory(seed)
    corpus = Corpus()
    for i in range(n):
        old, new = factory.change_lines()
        corpus.changes.append(
            CodeChange(i, "synth", f"c{i:07d}", "src/main.ml", tuple(old), tuple(new))
        )
    return corpus
