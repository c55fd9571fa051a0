"""Recursive-descent parser for one-variable expressions.

Grammar, loosest binding first::

    expr       := 'if' comparison 'then' expr 'else' expr | comparison
    comparison := additive [relop additive]
    additive   := term (('+' | '-') term)*
    term       := unary (('*' | '/') unary)*
    unary      := '-' unary | power
    power      := atom ['^' unary]              (right-associative)
    atom       := number | 't' | func '(' expr {',' expr} ')' | '(' expr ')'
"""
from __future__ import annotations

import re
from typing import List, NamedTuple

from ..errors import ParseError
from .nodes import FUNCTIONS, RELOPS, BinOp, Call, Compare, Cond, Neg, Num, Var

KEYWORDS = {"if", "then", "else"}

_TOKEN = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<num>(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)
  | (?P<name>[A-Za-z_][A-Za-z_0-9]*)
  | (?P<op>==|!=|<=|>=|[-+*/^(),<>])
    """,
    re.VERBOSE,
)


class Token(NamedTuple):
    kind: str  # num, name, op, end
    text: str
    pos: int


def tokenize(text: str) -> List[Token]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            raise ParseError(pos, f"unexpected character {text[pos]!r}")
        kind = m.lastgroup
        if kind != "ws":
            tokens.append(Token(kind, m.group(), pos))
        pos = m.end()
    tokens.append(Token("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text):
        self.tokens = tokenize(text)
        self.i = 0

    @property
    def tok(self):
        return self.tokens[self.i]

    def advance(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def at(self, text):
        return self.tok.kind in ("op", "name") and self.tok.text == text

    def expect(self, text):
        if not self.at(text):
            self.fail(f"expected {text!r}")
        return self.advance()

    def fail(self, message, tok=None):
        tok = tok or self.tok
        found = "end of input" if tok.kind == "end" else repr(tok.text)
        raise ParseError(tok.pos, f"{message}, found {found}")

    # -- grammar ---------------------------------------------------------

    def expr(self):
        if self.at("if"):
            self.advance()
            start = self.tok
            test = self.comparison()
            if not isinstance(test, Compare):
                raise ParseError(start.pos, "condition must be a comparison")
            self.expect("then")
            then = self.expr()
            self.expect("else")
            return Cond(test, then, self.expr())
        return self.comparison()

    def comparison(self):
        left = self.additive()
        if self.tok.kind == "op" and self.tok.text in RELOPS:
            op = self.advance().text
            right = self.additive()
            if self.tok.kind == "op" and self.tok.text in RELOPS:
                self.fail("comparisons cannot be chained")
            return Compare(op, left, right)
        return left

    def additive(self):
        left = self.term()
        while self.at("+") or self.at("-"):
            op = self.advance().text
            left = BinOp(op, left, self.term())
        return left

    def term(self):
        left = self.unary()
        while self.at("*") or self.at("/"):
            op = self.advance().text
            left = BinOp(op, left, self.unary())
        return left

    def unary(self):
        if self.at("-"):
            self.advance()
            return Neg(self.unary())
        return self.power()

    def power(self):
        base = self.atom()
        if self.at("^"):
            self.advance()
            return BinOp("^", base, self.unary())
        return base

    def atom(self):
        tok = self.tok
        if tok.kind == "num":
            self.advance()
            return Num(float(tok.text))
        if tok.kind == "name":
            if tok.text == "t":
                self.advance()
                return Var()
            if tok.text in FUNCTIONS:
                self.advance()
                self.expect("(")
                args = [self.expr()]
                while self.at(","):
                    self.advance()
                    args.append(self.expr())
                self.expect(")")
                if len(args) != FUNCTIONS[tok.text]:
                    raise ParseError(
                        tok.pos,
                        f"{tok.text} takes {FUNCTIONS[tok.text]} argument(s), got {len(args)}",
                    )
                return Call(tok.text, tuple(args))
            if tok.text in KEYWORDS:
                self.fail("unexpected keyword")
            raise ParseError(tok.pos, f"unknown name {tok.text!r}")
        if self.at("("):
            self.advance()
            inner = self.expr()
            self.expect(")")
            return inner
        self.fail("expected a number, 't', a function call or '('")


def parse(text: str):
    """Parse ``text`` into an expression tree; raise :class:`ParseError` with an offset."""
    p = _Parser(text)
    tree = p.expr()
    if p.tok.kind != "end":
        p.fail("unexpected trailing input")
    return tree
