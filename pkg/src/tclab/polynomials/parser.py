"""
Recursive-descent parser for the polynomial grammar shared by ring files and CLI
flags::

    poly   := ['-'] term (('+' | '-') term)*
    term   := nat | [nat '*'] factor ('*' factor)*
    factor := var ['^' nat]

Whitespace is ignored and coefficients are reduced mod p.
"""

from __future__ import annotations

import re
from typing import TYPE_CHECKING, NamedTuple

from tclab.errors import PolynomialSyntaxError

if TYPE_CHECKING:
    from tclab.polynomials import Monomial, Polynomial, PolynomialRing

token_pattern = re.compile(
    r"\s*(?:(?P<nat>\d+)|(?P<name>[A-Za-z_][A-Za-z0-9_]*)|(?P<op>[-+*^])|(?P<bad>\S))"
)


class Token(NamedTuple):
    kind: str
    text: str
    position: int


def tokenise(text: str) -> list[Token]:
    tokens = []
    for match in token_pattern.finditer(text):
        kind = match.lastgroup
        if kind is None:
            # Trailing whitespace only.
            continue
        if kind == "bad":
            raise PolynomialSyntaxError(
                f"Unexpected character {match.group(kind)!r}", text, match.start(kind)
            )
        tokens.append(Token(kind, match.group(kind), match.start(kind)))
    return tokens


class Parser:
    def __init__(self, text: str, ring: PolynomialRing):
        self.text = text
        self.ring = ring
        self.tokens = tokenise(text)
        self.position = 0

    def error(self, message: str, token: Token | None = None):
        where = token.position if token is not None else len(self.text)
        raise PolynomialSyntaxError(message, self.text, where)

    def peek(self) -> Token | None:
        return self.tokens[self.position] if self.position < len(self.tokens) else None

    def advance(self) -> Token | None:
        token = self.peek()
        self.position += 1
        return token

    def accept(self, op: str) -> bool:
        token = self.peek()
        if token is not None and token.kind == "op" and token.text == op:
            self.position += 1
            return True
        return False

    def parse(self) -> Polynomial:
        from tclab.polynomials import Polynomial

        if not self.tokens:
            self.error("Empty polynomial")

        terms: dict[Monomial, int] = {}
        sign = -1 if self.accept("-") else 1
        while True:
            monomial, coefficient = self.term()
            terms[monomial] = terms.get(monomial, 0) + sign * coefficient
            if self.accept("+"):
                sign = 1
            elif self.accept("-"):
                sign = -1
            else:
                break

        if (token := self.peek()) is not None:
            self.error(f"Unexpected {token.text!r}", token)
        return Polynomial(self.ring, terms)

    def term(self) -> tuple[Monomial, int]:
        coefficient = 1
        exponents = [0] * self.ring.nvars
        token = self.peek()
        if token is None:
            self.error("Expected a term")
        if token.kind == "nat":
            self.advance()
            coefficient = int(token.text)
            if not self.accept("*"):
                return tuple(exponents), coefficient
        self.factor(exponents)
        while self.accept("*"):
            self.factor(exponents)
        return tuple(exponents), coefficient

    def factor(self, exponents: list[int]):
        token = self.advance()
        if token is None:
            self.error("Expected a variable")
        if token.kind != "name":
            self.error(f"Expected a variable, got {token.text!r}", token)
        if token.text not in self.ring.index:
            self.error(f"Unknown variable {token.text!r}", token)
        exponent = 1
        if self.accept("^"):
            power = self.advance()
            if power is None or power.kind != "nat":
                self.error("Malformed exponent", power)
            exponent = int(power.text)
        exponents[self.ring.index[token.text]] += exponent


def parse(text: str, ring: PolynomialRing) -> Polynomial:
    return Parser(text, ring).parse()
