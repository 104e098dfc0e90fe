"""Parsing for the element grammar and operator text form.

Grammar (whitespace insignificant)::

    expr   := ['-'] term (('+'|'-') term)*
    term   := factor (('*'|'/') factor)*
    factor := base ('^' ['-'] int)?
    base   := int | 'c[' int '][' int ']' | 'b[' int '][' int ']'
            | 'u[' int '][' int ']' | '(' expr ')'

Printing (``str(element)``) always emits canonical form and round-trips
bit-exactly through :func:`parse_element`.
"""

from __future__ import annotations

import re

from .elements import Element
from .errors import ParseError

_TOKEN_RE = re.compile(
    r"\s*(?:(?P<int>\d+)|(?P<name>[bcuD])|(?P<op>[-+*/^()\[\]]))"
)


class _Tokens:
    def __init__(self, text: str):
        self.text = text
        self.items: list[tuple[str, str, int]] = []
        pos = 0
        while pos < len(text):
            m = _TOKEN_RE.match(text, pos)
            if m is None or m.end() == pos:
                if text[pos:].strip():
                    raise ParseError(f"unexpected character {text[pos:].strip()[0]!r}", pos)
                break
            kind = m.lastgroup
            assert kind is not None
            self.items.append((kind, m.group(kind), m.start(kind)))
            pos = m.end()
        self.i = 0

    def peek(self) -> tuple[str, str, int] | None:
        return self.items[self.i] if self.i < len(self.items) else None

    def next(self) -> tuple[str, str, int]:
        tok = self.peek()
        if tok is None:
            raise ParseError("unexpected end of input", len(self.text))
        self.i += 1
        return tok

    def expect(self, value: str) -> None:
        tok = self.next()
        if tok[1] != value:
            raise ParseError(f"expected {value!r}, found {tok[1]!r}", tok[2])

    def accept(self, value: str) -> bool:
        tok = self.peek()
        if tok is not None and tok[1] == value:
            self.i += 1
            return True
        return False

    def done(self) -> bool:
        return self.i >= len(self.items)


def _parse_int(tokens: _Tokens) -> int:
    neg = tokens.accept("-")
    kind, value, pos = tokens.next()
    if kind != "int":
        raise ParseError(f"expected integer, found {value!r}", pos)
    return -int(value) if neg else int(value)


def _parse_indexed(tokens: _Tokens, kind_letter: str, pos: int) -> Element:
    tokens.expect("[")
    level = _parse_int(tokens)
    tokens.expect("]")
    tokens.expect("[")
    index = _parse_int(tokens)
    tokens.expect("]")
    if level < 1 or index < 1:
        raise ParseError(f"symbol indices must be >= 1: {kind_letter}[{level}][{index}]", pos)
    return Element.from_var((kind_letter, level, index))


def _parse_base(tokens: _Tokens) -> Element:
    kind, value, pos = tokens.next()
    if kind == "int":
        return Element.from_rational(int(value))
    if kind == "name":
        if value == "D":
            raise ParseError("'D' is only valid in operator text", pos)
        return _parse_indexed(tokens, value, pos)
    if value == "(":
        e = _parse_expr(tokens)
        tokens.expect(")")
        return e
    raise ParseError(f"unexpected token {value!r}", pos)


def _parse_factor(tokens: _Tokens) -> Element:
    base = _parse_base(tokens)
    if tokens.accept("^"):
        return base ** _parse_int(tokens)
    return base


def _parse_term(tokens: _Tokens) -> Element:
    out = _parse_factor(tokens)
    while True:
        if tokens.accept("*"):
            out = out * _parse_factor(tokens)
        elif tokens.accept("/"):
            out = out / _parse_factor(tokens)
        else:
            return out


def _parse_expr(tokens: _Tokens) -> Element:
    negate = tokens.accept("-")
    out = _parse_term(tokens)
    if negate:
        out = -out
    while True:
        if tokens.accept("+"):
            out = out + _parse_term(tokens)
        elif tokens.accept("-"):
            out = out - _parse_term(tokens)
        else:
            return out


def parse_element(text: str) -> Element:
    """Parse element text into canonical form."""
    tokens = _Tokens(text)
    e = _parse_expr(tokens)
    if not tokens.done():
        tok = tokens.peek()
        assert tok is not None
        raise ParseError(f"trailing input {tok[1]!r}", tok[2])
    return e


def parse_operator_factors(text: str) -> list[tuple[int, Element]]:
    """Parse operator text ``(D[i] - <expr>) * ...`` into (level, eigenvalue) pairs."""
    tokens = _Tokens(text)
    factors: list[tuple[int, Element]] = []
    while True:
        tokens.expect("(")
        kind, value, pos = tokens.next()
        if kind != "name" or value != "D":
            raise ParseError(f"expected 'D', found {value!r}", pos)
        tokens.expect("[")
        level = _parse_int(tokens)
        tokens.expect("]")
        if level < 1:
            raise ParseError(f"operator level must be >= 1: D[{level}]", pos)
        tokens.expect("-")
        eigenvalue = _parse_expr(tokens)
        tokens.expect(")")
        factors.append((level, eigenvalue))
        if tokens.done():
            return factors
        tokens.expect("*")


def format_operator_factors(factors: list[tuple[int, Element]]) -> str:
    parts = []
    for level, eigenvalue in factors:
        ev = str(eigenvalue)
        if len(eigenvalue.num.terms) > 1 or not eigenvalue.den.is_const():
            ev = f"({ev})"
        parts.append(f"(D[{level}] - {ev})")
    return " * ".join(parts)
