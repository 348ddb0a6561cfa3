"""Recursive-descent parser for rational-function expressions in s.

Grammar (``^`` binds tightest, then unary sign, then ``* /``, then ``+ -``)::

    expr   := term (("+" | "-") term)*
    term   := unary (("*" | "/") unary | power)*
    unary  := ("+" | "-") unary | power
    power  := atom ("^" ["-"] INTEGER)?
    atom   := NUMBER | "s" | "(" expr ")"

Numbers are integers or decimals and are read exactly (``0.1`` is 1/10);
ratios are written with ``/``.  ``**`` is accepted as a synonym for ``^``.
Juxtaposition multiplies, so ``2s^2`` and ``s(s+1)`` parse as expected.
"""

from __future__ import annotations

import re
from fractions import Fraction

from ..errors import ParseError
from .poly import Poly
from .ratfunc import RatFunc

_TOKEN_RE = re.compile(
    r"\s*(?:(?P<num>\d+(?:\.\d*)?(?:[eE][+-]?\d+)?|\.\d+(?:[eE][+-]?\d+)?)"
    r"|(?P<var>s)|(?P<op>\*\*|[-+*/^()]))"
)


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN_RE.match(text, pos)
        if not m or m.end() == pos:
            start = pos + len(text[pos:]) - len(text[pos:].lstrip())
            raise ParseError(f"unexpected character {text[start]!r}", start)
        start = m.start(m.lastgroup)
        kind = m.lastgroup
        value = m.group(kind)
        if kind == "op" and value == "**":
            value = "^"
        tokens.append((kind, value, start))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect(self, value: str):
        kind, val, pos = self.take()
        if val != value:
            found = "end of input" if kind == "end" else repr(val)
            raise ParseError(f"expected {value!r}, found {found}", pos)

    def parse(self) -> RatFunc:
        result = self.expr()
        kind, val, pos = self.peek()
        if kind != "end":
            raise ParseError(f"unexpected {val!r}", pos)
        return result

    def expr(self) -> RatFunc:
        left = self.term()
        while self.peek()[1] in ("+", "-"):
            op = self.take()[1]
            right = self.term()
            left = left + right if op == "+" else left - right
        return left

    def term(self) -> RatFunc:
        left = self.unary()
        while True:
            kind, val, _ = self.peek()
            if kind in ("num", "var") or val == "(":
                left = left * self.power()
                continue
            if val not in ("*", "/"):
                break
            op, pos = self.take()[1:]
            right = self.unary()
            if op == "*":
                left = left * right
            else:
                if right.is_zero():
                    raise ParseError("division by zero", pos)
                left = left / right
        return left

    def unary(self) -> RatFunc:
        if self.peek()[1] in ("+", "-"):
            op = self.take()[1]
            operand = self.unary()
            return -operand if op == "-" else operand
        return self.power()

    def power(self) -> RatFunc:
        base = self.atom()
        if self.peek()[1] == "^":
            self.take()
            sign = 1
            if self.peek()[1] == "-":
                self.take()
                sign = -1
            kind, val, pos = self.take()
            if kind != "num" or not val.isdigit():
                raise ParseError("exponent must be an integer", pos)
            n = sign * int(val)
            if n < 0 and base.is_zero():
                raise ParseError("division by zero", pos)
            return base ** n
        return base

    def atom(self) -> RatFunc:
        kind, val, pos = self.take()
        if kind == "num":
            return RatFunc(Poly([Fraction(val)]))
        if kind == "var":
            return RatFunc.s()
        if val == "(":
            inner = self.expr()
            self.expect(")")
            return inner
        found = "end of input" if kind == "end" else repr(val)
        raise ParseError(f"unexpected {found}", pos)


def parse_ratfunc(text: str) -> RatFunc:
    """Parse ``text`` into a normalized :class:`RatFunc`."""
    return _Parser(text).parse()
