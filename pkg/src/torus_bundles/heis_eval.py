# heis_eval.py
#
# Expression evaluator for ℋ_f0, used by the heis-eval command.
#
#   expr    := power ('*' power)*
#   power   := atom ('^' integer)*
#   atom    := triple | '(' expr ')' | '[' expr ',' expr ']' | '{' expr '}' atom
#   triple  := '(' rational ',' integer ',' integer ')'
#
# [g,h] is the commutator g·h·g⁻¹·h⁻¹ and {g}h the conjugate g·h·g⁻¹.

from __future__ import annotations

import re
from fractions import Fraction

from .errors import ExpressionError
from .heisenberg import (
    HeisElement,
    heis_comm,
    heis_conj,
    heis_mul,
    heis_pow,
)

_TOKEN = re.compile(r"\s*(?:(\d+)|(.))")


def tokenize(text: str) -> list[str]:
    tokens = []
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        match = _TOKEN.match(text, pos)
        if match is None:
            break
        number, symbol = match.groups()
        token = number if number is not None else symbol
        if number is None and symbol not in "()[]{},*^-/":
            raise ExpressionError(f"unexpected character {symbol!r} at {match.start(2)}")
        tokens.append(token)
        pos = match.end()
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = tokenize(text)
        self.pos = 0

    def peek(self):
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def take(self, expected=None):
        token = self.peek()
        if token is None:
            raise ExpressionError(f"unexpected end of expression {self.text!r}")
        if expected is not None and token != expected:
            raise ExpressionError(f"expected {expected!r}, found {token!r}")
        self.pos += 1
        return token

    # ------------------------------------------------------------

    def integer(self) -> int:
        sign = 1
        if self.peek() == "-":
            self.take()
            sign = -1
        token = self.take()
        if not token.isdigit():
            raise ExpressionError(f"expected an integer, found {token!r}")
        return sign * int(token)

    def rational(self) -> Fraction:
        numerator = self.integer()
        if self.peek() == "/":
            self.take()
            denominator = self.integer()
            if denominator == 0:
                raise ExpressionError("zero denominator")
            return Fraction(numerator, denominator)
        return Fraction(numerator)

    def expr(self) -> HeisElement:
        value = self.power()
        while self.peek() == "*":
            self.take()
            value = heis_mul(value, self.power())
        return value

    def power(self) -> HeisElement:
        value = self.atom()
        while self.peek() == "^":
            self.take()
            value = heis_pow(value, self.integer())
        return value

    def atom(self) -> HeisElement:
        token = self.peek()
        if token == "(":
            start = self.pos
            try:
                return self.triple()
            except ExpressionError:
                self.pos = start
            self.take("(")
            value = self.expr()
            self.take(")")
            return value
        if token == "[":
            self.take()
            g = self.expr()
            self.take(",")
            h = self.expr()
            self.take("]")
            return heis_comm(g, h)
        if token == "{":
            self.take()
            g = self.expr()
            self.take("}")
            return heis_conj(g, self.atom())
        raise ExpressionError(f"unexpected token {token!r} in {self.text!r}")

    def triple(self) -> HeisElement:
        self.take("(")
        a = self.rational()
        self.take(",")
        b = self.integer()
        self.take(",")
        c = self.integer()
        self.take(")")
        return HeisElement(a, b, c)

    def parse(self) -> HeisElement:
        value = self.expr()
        if self.peek() is not None:
            raise ExpressionError(f"trailing input at {self.peek()!r} in {self.text!r}")
        return value


def evaluate(text: str) -> HeisElement:
    """Evaluate e.g. '[(0,1,0),(0,0,1)]' or '(7/3,0,0)*(0,1,1)^-2'."""
    if not text or not text.strip():
        raise ExpressionError("empty expression")
    try:
        return _Parser(text).parse()
    except RecursionError:
        raise ExpressionError("expression is nested too deeply") from None
