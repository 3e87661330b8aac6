"""Relaxed recursive-descent parser for MiniLang and its query extension.

MiniLang statements: block, if/else, while, return, expression statement,
assignment ``lvalue assignOp expr ;`` and var declaration ``id id = expr ;``.
Expressions: binary, unary, call, member access, parenthesized, identifier,
literal.  Query mode additionally accepts placeholders, the ``<...>``
wildcard, and the ``_`` empty marker per the query grammar.

Relaxations applied on top of the strict grammar:
  (a) an unmatched ``{`` closes implicitly at the end of the snippet
      (the block node simply lacks its ``}`` terminal),
  (b) leading orphan ``}`` tokens become terminal children of the root,
  (c) a trailing expression at end of input parses as an expression
      statement without requiring ``;``,
  (d) a query snippet consisting solely of ``_`` yields the empty-marker
      root.
"""

from __future__ import annotations

from dsx.errors import ParseError, QueryTokenInCodeMode
from dsx.grammar import tokens as tk
from dsx.grammar.tree import (
    ROOT_LABEL,
    NodeKind,
    PlaceholderSpec,
    Snippet,
    TreeNode,
)

# Binary operators by precedence level, loosest first.  Left-associative.
_BINARY_LEVELS = (
    ("||",),
    ("&&",),
    ("==", "!="),
    ("<", ">", "<=", ">="),
    ("+", "-"),
    ("*", "/", "%"),
)


def parse_snippet(snippet: Snippet) -> TreeNode:
    """Parse a snippet into a tree rooted at a statement sequence (or the
    empty-marker node for a ``_`` query)."""
    toks = tk.tokenize(list(snippet.lines))
    query_mode = snippet.mode == "query"
    if not query_mode:
        for t in toks:
            if t.kind in tk.QUERY_KINDS:
                raise QueryTokenInCodeMode(
                    t.line, t.column, f"query token {t.text!r} in code mode"
                )
    if not toks:
        if query_mode:
            return TreeNode("_", NodeKind.EMPTY)
        return TreeNode(ROOT_LABEL, NodeKind.NONTERMINAL)
    if toks[0].kind == tk.EMPTY:
        if len(toks) > 1:
            t = toks[1]
            raise ParseError(t.line, t.column, "'_' is only legal as an entire snippet")
        return TreeNode("_", NodeKind.EMPTY, span=(toks[0].line, toks[0].column))
    return _Parser(toks, query_mode).parse_program()


class _Parser:
    def __init__(self, toks: list[tk.Token], query_mode: bool):
        self.toks = toks
        self.pos = 0
        self.query_mode = query_mode

    # Token helpers.

    def peek(self, offset: int = 0) -> tk.Token | None:
        i = self.pos + offset
        return self.toks[i] if i < len(self.toks) else None

    def at_end(self) -> bool:
        return self.pos >= len(self.toks)

    def advance(self) -> tk.Token:
        t = self.toks[self.pos]
        self.pos += 1
        return t

    def error(self, message: str) -> ParseError:
        if self.at_end():
            last = self.toks[-1]
            return ParseError(last.line, last.column + len(last.text), message)
        t = self.toks[self.pos]
        return ParseError(t.line, t.column, f"{message} (found {t.text!r})")

    def expect(self, kind: str, text: str) -> tk.Token:
        t = self.peek()
        if t is None or t.kind != kind or t.text != text:
            raise self.error(f"expected {text!r}")
        return self.advance()

    def terminal(self, t: tk.Token) -> TreeNode:
        return TreeNode(t.text, NodeKind.TERMINAL, span=(t.line, t.column))

    def placeholder_node(self, t: tk.Token) -> TreeNode:
        spec = PlaceholderSpec(t.category, t.name)
        return TreeNode(
            t.text, NodeKind.PLACEHOLDER, placeholder=spec, span=(t.line, t.column)
        )

    def wildcard_node(self, t: tk.Token, stmt_pos: bool) -> TreeNode:
        return TreeNode(
            t.text, NodeKind.WILDCARD, span=(t.line, t.column), stmt_pos=stmt_pos
        )

    # Grammar.

    def parse_program(self) -> TreeNode:
        root = TreeNode(ROOT_LABEL, NodeKind.NONTERMINAL)
        while (t := self.peek()) is not None and t.kind == tk.PUNCT and t.text == "}":
            root.children.append(self.terminal(self.advance()))
        while not self.at_end():
            root.children.append(self.parse_statement())
        return root

    def parse_statement(self) -> TreeNode:
        t = self.peek()
        if t is None:
            raise self.error("expected a statement")
        if t.kind == tk.PUNCT and t.text == "{":
            return self.parse_block()
        if t.kind == tk.KEYWORD and t.text == "if":
            return self.parse_if()
        if t.kind == tk.KEYWORD and t.text == "while":
            return self.parse_while()
        if t.kind == tk.KEYWORD and t.text == "return":
            return self.parse_return()
        if t.kind == tk.KEYWORD:
            raise self.error(f"unexpected keyword {t.text!r}")
        if t.kind == tk.WILDCARD:
            return self.wildcard_node(self.advance(), stmt_pos=True)
        if t.kind == tk.EMPTY:
            raise ParseError(t.line, t.column, "'_' is only legal as an entire snippet")
        if self._at_var_decl():
            return self.parse_var_decl()
        return self.parse_expr_or_assign_statement()

    def parse_block(self) -> TreeNode:
        node = TreeNode("block", NodeKind.NONTERMINAL)
        node.children.append(self.terminal(self.expect(tk.PUNCT, "{")))
        while True:
            t = self.peek()
            if t is None:
                return node  # relaxation (a): implicit close at end of snippet
            if t.kind == tk.PUNCT and t.text == "}":
                node.children.append(self.terminal(self.advance()))
                return node
            node.children.append(self.parse_statement())

    def parse_if(self) -> TreeNode:
        node = TreeNode("if_stmt", NodeKind.NONTERMINAL)
        node.children.append(self.terminal(self.expect(tk.KEYWORD, "if")))
        node.children.append(self.terminal(self.expect(tk.PUNCT, "(")))
        node.children.append(self.parse_expression())
        node.children.append(self.terminal(self.expect(tk.PUNCT, ")")))
        node.children.append(self.parse_statement())
        t = self.peek()
        if t is not None and t.kind == tk.KEYWORD and t.text == "else":
            node.children.append(self.terminal(self.advance()))
            node.children.append(self.parse_statement())
        return node

    def parse_while(self) -> TreeNode:
        node = TreeNode("while_stmt", NodeKind.NONTERMINAL)
        node.children.append(self.terminal(self.expect(tk.KEYWORD, "while")))
        node.children.append(self.terminal(self.expect(tk.PUNCT, "(")))
        node.children.append(self.parse_expression())
        node.children.append(self.terminal(self.expect(tk.PUNCT, ")")))
        node.children.append(self.parse_statement())
        return node

    def parse_return(self) -> TreeNode:
        node = TreeNode("return_stmt", NodeKind.NONTERMINAL)
        node.children.append(self.terminal(self.expect(tk.KEYWORD, "return")))
        t = self.peek()
        if t is not None and not (t.kind == tk.PUNCT and t.text == ";"):
            node.children.append(self.parse_expression())
        node.children.append(self.terminal(self.expect(tk.PUNCT, ";")))
        return node

    def _at_var_decl(self) -> bool:
        def id_like(t: tk.Token | None) -> bool:
            if t is None:
                return False
            if t.kind == tk.IDENT:
                return True
            return t.kind == tk.PLACEHOLDER and t.category == "ID"

        def assign_like(t: tk.Token | None) -> bool:
            if t is None:
                return False
            if t.kind == tk.OPERATOR and t.text in tk.ASSIGN_OPS:
                return True
            return t.kind == tk.PLACEHOLDER and t.category == "OP"

        return (
            id_like(self.peek())
            and id_like(self.peek(1))
            and assign_like(self.peek(2))
        )

    def _id_terminal(self) -> TreeNode:
        t = self.peek()
        if t is not None and t.kind == tk.IDENT:
            return self.terminal(self.advance())
        if t is not None and t.kind == tk.PLACEHOLDER and t.category == "ID":
            return self.placeholder_node(self.advance())
        raise self.error("expected an identifier")

    def _assign_op_node(self) -> TreeNode:
        t = self.peek()
        if t is not None and t.kind == tk.OPERATOR and t.text in tk.ASSIGN_OPS:
            return self.terminal(self.advance())
        if t is not None and t.kind == tk.PLACEHOLDER and t.category == "OP":
            return self.placeholder_node(self.advance())
        raise self.error("expected an assignment operator")

    def parse_var_decl(self) -> TreeNode:
        node = TreeNode("var_decl", NodeKind.NONTERMINAL)
        node.children.append(self._id_terminal())
        node.children.append(self._id_terminal())
        node.children.append(self._assign_op_node())
        node.children.append(self.parse_expression())
        node.children.append(self.terminal(self.expect(tk.PUNCT, ";")))
        return node

    def parse_expr_or_assign_statement(self) -> TreeNode:
        expr = self.parse_expression()
        t = self.peek()
        if t is not None and (
            (t.kind == tk.OPERATOR and t.text in tk.ASSIGN_OPS)
            or (t.kind == tk.PLACEHOLDER and t.category == "OP")
        ):
            node = TreeNode("assign_stmt", NodeKind.NONTERMINAL)
            node.children.append(expr)
            node.children.append(self._assign_op_node())
            node.children.append(self.parse_expression())
            node.children.append(self.terminal(self.expect(tk.PUNCT, ";")))
            return node
        node = TreeNode("expr_stmt", NodeKind.NONTERMINAL)
        node.children.append(expr)
        if self.at_end():
            return node  # relaxation (c): trailing expression without ';'
        node.children.append(self.terminal(self.expect(tk.PUNCT, ";")))
        return node

    # Expressions.

    def parse_expression(self) -> TreeNode:
        return self.parse_binary(0)

    def parse_binary(self, level: int) -> TreeNode:
        if level >= len(_BINARY_LEVELS):
            return self.parse_unary()
        node = self.parse_binary(level + 1)
        while True:
            t = self.peek()
            if t is None:
                return node
            if t.kind == tk.OPERATOR and t.text in _BINARY_LEVELS[level]:
                op = self.terminal(self.advance())
            elif level == 0 and t.kind == tk.PLACEHOLDER and t.category == "binOP":
                # Placeholder operators have no inherent precedence; they
                # bind loosest and associate left.
                op = self.placeholder_node(self.advance())
            else:
                return node
            right = self.parse_binary(level + 1)
            node = TreeNode("binary_expr", NodeKind.NONTERMINAL, [node, op, right])

    def parse_unary(self) -> TreeNode:
        t = self.peek()
        if t is not None and (
            (t.kind == tk.OPERATOR and t.text in tk.UNARY_OPS)
            or (t.kind == tk.PLACEHOLDER and t.category == "unOP")
        ):
            if t.kind == tk.OPERATOR:
                op = self.terminal(self.advance())
            else:
                op = self.placeholder_node(self.advance())
            operand = self.parse_unary()
            return TreeNode("unary_expr", NodeKind.NONTERMINAL, [op, operand])
        return self.parse_postfix()

    def parse_postfix(self) -> TreeNode:
        node = self.parse_primary()
        while True:
            t = self.peek()
            if t is None:
                return node
            if t.kind == tk.PUNCT and t.text == "(":
                call = TreeNode("call_expr", NodeKind.NONTERMINAL)
                call.children.append(node)
                call.children.append(self.terminal(self.advance()))
                call.children.append(self.parse_expr_list())
                call.children.append(self.terminal(self.expect(tk.PUNCT, ")")))
                node = call
            elif t.kind == tk.PUNCT and t.text == ".":
                member = TreeNode("member_expr", NodeKind.NONTERMINAL)
                member.children.append(node)
                member.children.append(self.terminal(self.advance()))
                member.children.append(self._id_terminal())
                node = member
            else:
                return node

    def parse_expr_list(self) -> TreeNode:
        node = TreeNode("expr_list", NodeKind.NONTERMINAL)
        t = self.peek()
        if t is not None and t.kind == tk.PUNCT and t.text == ")":
            return node
        node.children.append(self.parse_expression())
        while (t := self.peek()) is not None and t.kind == tk.PUNCT and t.text == ",":
            node.children.append(self.terminal(self.advance()))
            node.children.append(self.parse_expression())
        return node

    def parse_primary(self) -> TreeNode:
        t = self.peek()
        if t is None:
            raise self.error("expected an expression")
        if t.kind == tk.PUNCT and t.text == "(":
            node = TreeNode("paren_expr", NodeKind.NONTERMINAL)
            node.children.append(self.terminal(self.advance()))
            node.children.append(self.parse_expression())
            node.children.append(self.terminal(self.expect(tk.PUNCT, ")")))
            return node
        if t.kind in (tk.IDENT, tk.INT, tk.STRING, tk.BOOL):
            return self.terminal(self.advance())
        if t.kind == tk.PLACEHOLDER and t.category in ("EXPR", "ID", "LT"):
            return self.placeholder_node(self.advance())
        if t.kind == tk.WILDCARD:
            return self.wildcard_node(self.advance(), stmt_pos=False)
        raise self.error("expected an expression")
