"""
Recursive-descent parser for polynomial text.

Grammar (see docs/polynomial_grammar.md)::

    expr    := term (('+' | '-') term)*
    term    := factor (['*'] factor)*
    factor  := ('+' | '-') factor | atom ['^' INT]
    atom    := NUMBER | IDENT | '(' expr ')'
    NUMBER  := INT ['/' INT]
"""

import re
from fractions import Fraction
from typing import List, NamedTuple

from algebra.errors import ParseError, UnknownVariableError
from algebra.polynomial import Polynomial
from algebra.rings import PolynomialRing

_TOKEN = re.compile(r"""
    (?P<space>\s+)
  | (?P<number>\d+(?:\s*/\s*\d+)?)
  | (?P<ident>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<op>[-+*^()/])
""", re.VERBOSE)


class Token(NamedTuple):
    kind: str
    text: str
    pos: int


def tokenize(text: str) -> List[Token]:
    tokens = []
    pos = 0
    while pos < len(text):
        match = _TOKEN.match(text, pos)
        if not match:
            raise ParseError(f"unexpected character '{text[pos]}'", pos)
        kind = match.lastgroup
        if kind != "space":
            if kind == "op" and match.group() == "/":
                raise ParseError("'/' is only allowed inside a coefficient literal a/b", pos)
            tokens.append(Token(kind, match.group(), pos))
        pos = match.end()
    tokens.append(Token("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str, ring: PolynomialRing):
        self.ring = ring
        self.tokens = tokenize(text)
        self.i = 0

    @property
    def current(self) -> Token:
        return self.tokens[self.i]

    def take(self) -> Token:
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect(self, text: str) -> Token:
        tok = self.current
        if tok.text != text:
            found = tok.text or "end of input"
            raise ParseError(f"expected '{text}', found '{found}'", tok.pos)
        return self.take()

    def parse(self) -> Polynomial:
        if self.current.kind == "end":
            raise ParseError("empty polynomial", 0)
        result = self.expr()
        if self.current.kind != "end":
            raise ParseError(f"unexpected '{self.current.text}'", self.current.pos)
        return result

    def expr(self) -> Polynomial:
        result = self.term()
        while self.current.text in ("+", "-"):
            op = self.take().text
            rhs = self.term()
            result = result + rhs if op == "+" else result - rhs
        return result

    def _starts_atom(self) -> bool:
        tok = self.current
        return tok.kind in ("number", "ident") or tok.text == "("

    def term(self) -> Polynomial:
        result = self.factor()
        while True:
            if self.current.text == "*":
                self.take()
                result = result * self.factor()
            elif self._starts_atom():
                result = result * self.factor()
            else:
                return result

    def factor(self) -> Polynomial:
        if self.current.text in ("+", "-"):
            op = self.take().text
            inner = self.factor()
            return inner if op == "+" else -inner
        base = self.atom()
        if self.current.text == "^":
            self.take()
            tok = self.current
            if tok.kind != "number" or "/" in tok.text:
                raise ParseError("exponent must be a natural number", tok.pos)
            self.take()
            return base ** int(tok.text)
        return base

    def atom(self) -> Polynomial:
        tok = self.current
        if tok.kind == "number":
            self.take()
            if "/" in tok.text:
                num, den = (int(part) for part in tok.text.split("/"))
                if den == 0:
                    raise ParseError("zero denominator in coefficient literal", tok.pos)
                return self.ring.constant(Fraction(num, den))
            return self.ring.constant(int(tok.text))
        if tok.kind == "ident":
            self.take()
            if tok.text not in self.ring.table:
                raise UnknownVariableError(f"unknown variable '{tok.text}'", tok.pos)
            return self.ring.gen(tok.text)
        if tok.text == "(":
            self.take()
            inner = self.expr()
            self.expect(")")
            return inner
        found = tok.text or "end of input"
        raise ParseError(f"unexpected '{found}'", tok.pos)


def parse_polynomial(text: str, ring: PolynomialRing) -> Polynomial:
    """Parse ``text`` into the canonical polynomial of ``ring``."""
    return _Parser(text, ring).parse()
