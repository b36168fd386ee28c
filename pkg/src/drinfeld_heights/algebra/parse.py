"""Text grammar for elements of F_q(t) and places.

    expr   := ['-'] term (('+' | '-') term)*
    term   := power (('*' | '/')? power)*      juxtaposition multiplies
    power  := atom ('^' ['-'] INT)?
    atom   := INT | 't' | 'g' | '(' expr ')'

Integers are read in the prime field, ``g`` is the generator of an extension
field.  Examples: ``t^2+1``, ``(t+1)^2/t^2``, ``(g+1)*t^3+g``, ``1/t``.
Errors carry the column at which parsing failed.
"""

from __future__ import annotations

import re

from ..errors import ConfigError, DomainError
from .places import INFINITY, Place
from .poly import Poly
from .ratfunc import RatFunc

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_]\w*)|(\S))")


def _tokenize(text):
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            break
        start = m.start(m.lastindex)
        if m.group(1) is not None:
            tokens.append(("int", int(m.group(1)), start))
        elif m.group(2) is not None:
            tokens.append(("name", m.group(2), start))
        else:
            tokens.append(("op", m.group(3), start))
        pos = m.end()
    tokens.append(("end", None, len(text)))
    return tokens


class _Parser:
    def __init__(self, field, text):
        self.field = field
        self.text = text
        self.tokens = _tokenize(text)
        self.i = 0

    def error(self, message, pos=None):
        if pos is None:
            pos = self.tokens[self.i][2]
        return ConfigError(message, position=pos, source=self.text)

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def is_op(self, *ops):
        kind, value, _ = self.peek()
        return kind == "op" and value in ops

    def parse(self):
        if self.peek()[0] == "end":
            raise self.error("empty expression")
        value = self.expr()
        if self.peek()[0] != "end":
            raise self.error(f"unexpected {self.peek()[1]!r}")
        return value

    def expr(self):
        negate = False
        if self.is_op("-"):
            self.take()
            negate = True
        elif self.is_op("+"):
            self.take()
        value = self.term()
        if negate:
            value = -value
        while self.is_op("+", "-"):
            op = self.take()[1]
            rhs = self.term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def _starts_atom(self):
        kind, value, _ = self.peek()
        return kind in ("int", "name") or (kind == "op" and value == "(")

    def term(self):
        value = self.power()
        while True:
            if self.is_op("*", "/"):
                op, pos = self.take()[1:]
                rhs = self.power()
                if op == "*":
                    value = value * rhs
                else:
                    if rhs.is_zero():
                        raise self.error("division by zero", pos)
                    value = value / rhs
            elif self._starts_atom():
                value = value * self.power()
            else:
                return value

    def power(self):
        base_pos = self.peek()[2]
        value = self.atom()
        if self.is_op("^"):
            self.take()
            sign = 1
            if self.is_op("-"):
                self.take()
                sign = -1
            kind, n, pos = self.take()
            if kind != "int":
                raise self.error("expected an integer exponent", pos)
            if sign < 0 and value.is_zero():
                raise self.error("negative power of zero", base_pos)
            value = value ** (sign * n)
        return value

    def atom(self):
        kind, value, pos = self.take()
        if kind == "int":
            return RatFunc.constant(self.field, value % self.field.p)
        if kind == "name":
            if value == "t":
                return RatFunc.t(self.field)
            if value == "g":
                if self.field.e == 1:
                    raise self.error("'g' needs an extension field", pos)
                return RatFunc.constant(self.field, self.field.p)
            raise self.error(f"unknown name {value!r}", pos)
        if kind == "op" and value == "(":
            inner = self.expr()
            if not self.is_op(")"):
                raise self.error("expected ')'")
            self.take()
            return inner
        if kind == "end":
            raise self.error("unexpected end of input", pos)
        raise self.error(f"unexpected {value!r}", pos)


def parse_ratfunc(field, text):
    """Parse an element of F_q(t)."""
    if not isinstance(text, str):
        raise ConfigError(f"expected a string, got {type(text).__name__}")
    return _Parser(field, text).parse()


def parse_poly(field, text):
    x = parse_ratfunc(field, text)
    if not x.is_poly():
        raise ConfigError(f"{text!r} is not a polynomial")
    return x.num


def parse_place(field, text):
    """``inf`` or a monic irreducible polynomial."""
    stripped = text.strip()
    if stripped.lower() in ("inf", "infinity", "oo", "∞"):
        return INFINITY
    P = parse_poly(field, stripped)
    try:
        return Place(P)
    except DomainError as exc:
        raise ConfigError(str(exc)) from None


def parse_places(field, text):
    """Comma or whitespace separated place list; empty text gives no places."""
    out = []
    depth, start = 0, 0
    pieces = []
    for i, ch in enumerate(text):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif ch in ",;" and depth == 0:
            pieces.append(text[start:i])
            start = i + 1
    pieces.append(text[start:])
    for piece in pieces:
        if piece.strip():
            out.append(parse_place(field, piece))
    return out


def poly_t(field):
    return Poly.t(field)
