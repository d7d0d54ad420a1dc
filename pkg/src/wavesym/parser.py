"""Recursive-descent parser for the expression grammar.

Grammar (whitespace insignificant): infix ``+ - * /``, right-associative
``^`` binding tightest, unary minus, function calls ``exp(...)``, ``ln``,
``sin``, ``cos``, ``tan``, ``sinh``, ``cosh``, ``abs``, ``sign``,
``arctan``, ``arctanh``, integer literals (rationals come out of ``a/b``),
identifiers ``[A-Za-z][A-Za-z0-9_]*`` as symbols, and ``e^x`` as sugar for
``exp(x)``.
"""

from __future__ import annotations

import re

from .expr import Expr, const, div, func, mul, neg, pow_, sub, sym, add

__all__ = ["parse", "ParseError", "FUNCTION_NAMES"]

FUNCTION_NAMES = (
    "exp",
    "ln",
    "sin",
    "cos",
    "tan",
    "sinh",
    "cosh",
    "abs",
    "sign",
    "arctan",
    "arctanh",
)

_TOKEN_RE = re.compile(
    r"(?P<ws>\s+)|(?P<int>\d+)|(?P<name>[A-Za-z][A-Za-z0-9_]*)|(?P<op>[-+*/^()])"
)


class ParseError(Exception):
    """Syntax error with byte offset and the set of expected tokens."""

    def __init__(self, message, offset, expected=()):
        self.offset = offset
        self.expected = tuple(expected)
        detail = f"{message} at offset {offset}"
        if expected:
            detail += f" (expected one of: {', '.join(expected)})"
        super().__init__(detail)


def _tokenize(text: str):
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise ParseError(
                f"unexpected character {text[pos]!r}", pos,
                ("number", "identifier", "operator"),
            )
        pos = m.end()
        if m.lastgroup == "ws":
            continue
        tokens.append((m.lastgroup, m.group(), m.start()))
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def advance(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect(self, value):
        kind, val, off = self.peek()
        if val != value:
            raise ParseError(f"unexpected token {val or 'end of input'!r}", off, (value,))
        return self.advance()

    def parse(self) -> Expr:
        e = self.sum()
        kind, val, off = self.peek()
        if kind != "end":
            raise ParseError(
                f"unexpected token {val!r}", off, ("+", "-", "*", "/", "^", "end of input")
            )
        return e

    def sum(self) -> Expr:
        e = self.product()
        while True:
            kind, val, off = self.peek()
            if val == "+":
                self.advance()
                e = add(e, self.product())
            elif val == "-":
                self.advance()
                e = sub(e, self.product())
            else:
                return e

    def product(self) -> Expr:
        e = self.unary()
        while True:
            kind, val, off = self.peek()
            if val == "*":
                self.advance()
                e = mul(e, self.unary())
            elif val == "/":
                self.advance()
                e = div(e, self.unary())
            else:
                return e

    def unary(self) -> Expr:
        kind, val, off = self.peek()
        if val == "-":
            self.advance()
            return neg(self.unary())
        return self.power()

    def power(self) -> Expr:
        base = self.atom()
        kind, val, off = self.peek()
        if val == "^":
            self.advance()
            exponent = self.power_operand()
            if base.kind == 1 and base.data == "e":  # SYM "e": e^x sugar
                return func("exp", exponent)
            return pow_(base, exponent)
        return base

    def power_operand(self) -> Expr:
        # right-associative: a^b^c == a^(b^c); unary minus allowed: a^-2
        kind, val, off = self.peek()
        if val == "-":
            self.advance()
            return neg(self.power_operand())
        return self.power()

    def atom(self) -> Expr:
        kind, val, off = self.advance()
        if kind == "int":
            return const(int(val))
        if kind == "name":
            if self.peek()[1] == "(":
                if val not in FUNCTION_NAMES:
                    raise ParseError(f"unknown function name {val!r}", off, FUNCTION_NAMES)
                self.advance()
                arg = self.sum()
                self.expect(")")
                return func(val, arg)
            return sym(val)
        if val == "(":
            e = self.sum()
            self.expect(")")
            return e
        raise ParseError(
            f"unexpected token {val or 'end of input'!r}", off,
            ("number", "identifier", "(", "-"),
        )


def parse(text: str) -> Expr:
    """Parse expression text into canonical form."""
    return _Parser(text).parse()
