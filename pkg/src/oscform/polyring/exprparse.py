"""Parser for polynomial and rational-function expressions.

Grammar (whitespace insensitive):

    expr    := term (('+' | '-') term)*
    term    := unary (('*' | '/') unary)*
    unary   := ('+' | '-')* power
    power   := atom ('^' exponent)?
    atom    := INTEGER | RATIONAL | IDENT | '(' expr ')'

Integer literals may be written a/b; since '/' is also the division
operator this is just ordinary parsing.  Exponents must be nonnegative
integer literals.  Identifiers must belong to the declared variable
tuple.  Implicit multiplication is not supported: write 2*x, not 2x.

Everything is parsed into a RationalFunction; parse_polynomial then
checks the denominator is trivial.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from ..errors import ParseError
from .poly import Polynomial
from .ratfunc import RationalFunction


class _Token:
    __slots__ = ("kind", "text", "line", "column")

    def __init__(self, kind: str, text: str, line: int, column: int):
        self.kind = kind
        self.text = text
        self.line = line
        self.column = column


def _tokenize(text: str) -> list[_Token]:
    tokens: list[_Token] = []
    line = 1
    column = 1
    i = 0
    while i < len(text):
        ch = text[i]
        if ch == "\n":
            line += 1
            column = 1
            i += 1
            continue
        if ch.isspace():
            column += 1
            i += 1
            continue
        if ch.isdigit():
            start = i
            while i < len(text) and text[i].isdigit():
                i += 1
            tokens.append(_Token("int", text[start:i], line, column))
            column += i - start
            continue
        if ch.isalpha() or ch == "_":
            start = i
            while i < len(text) and (text[i].isalnum() or text[i] == "_"):
                i += 1
            tokens.append(_Token("ident", text[start:i], line, column))
            column += i - start
            continue
        if ch in "+-*/^()":
            tokens.append(_Token(ch, ch, line, column))
            column += 1
            i += 1
            continue
        raise ParseError(f"unexpected character {ch!r}", line, column)
    tokens.append(_Token("end", "", line, column))
    return tokens


class _Parser:
    def __init__(self, tokens: list[_Token], variables: tuple[str, ...]):
        self.tokens = tokens
        self.pos = 0
        self.variables = variables

    def peek(self) -> _Token:
        return self.tokens[self.pos]

    def advance(self) -> _Token:
        token = self.tokens[self.pos]
        self.pos += 1
        return token

    def expect(self, kind: str) -> _Token:
        token = self.peek()
        if token.kind != kind:
            raise ParseError(
                f"expected {kind!r}, found {token.text or 'end of input'!r}",
                token.line, token.column,
            )
        return self.advance()

    def parse_expr(self) -> RationalFunction:
        value = self.parse_term()
        while self.peek().kind in ("+", "-"):
            op = self.advance()
            right = self.parse_term()
            value = value + right if op.kind == "+" else value - right
        return value

    def parse_term(self) -> RationalFunction:
        value = self.parse_unary()
        while self.peek().kind in ("*", "/"):
            op = self.advance()
            right = self.parse_unary()
            if op.kind == "*":
                value = value * right
            else:
                if right.is_zero:
                    raise ParseError("division by zero", op.line, op.column)
                value = value / right
        return value

    def parse_unary(self) -> RationalFunction:
        sign = 1
        while self.peek().kind in ("+", "-"):
            if self.advance().kind == "-":
                sign = -sign
        value = self.parse_power()
        return value if sign > 0 else -value

    def parse_power(self) -> RationalFunction:
        base = self.parse_atom()
        if self.peek().kind == "^":
            caret = self.advance()
            sign_token = self.peek()
            if sign_token.kind == "-":
                raise ParseError("exponent must be a nonnegative integer",
                                 sign_token.line, sign_token.column)
            exponent_token = self.expect("int")
            return base ** int(exponent_token.text)
        return base

    def parse_atom(self) -> RationalFunction:
        token = self.peek()
        if token.kind == "int":
            self.advance()
            return RationalFunction.from_scalar(self.variables, Fraction(int(token.text)))
        if token.kind == "ident":
            self.advance()
            if token.text not in self.variables:
                raise ParseError(
                    f"unknown variable {token.text!r}; declared: {', '.join(self.variables)}",
                    token.line, token.column,
                )
            return RationalFunction.variable(self.variables, token.text)
        if token.kind == "(":
            self.advance()
            value = self.parse_expr()
            self.expect(")")
            return value
        raise ParseError(
            f"expected a number, variable, or '(', found {token.text or 'end of input'!r}",
            token.line, token.column,
        )


def parse_rational(text: str, variables: Sequence[str]) -> RationalFunction:
    """Parse an expression into a rational function over the variables."""
    variables = tuple(variables)
    parser = _Parser(_tokenize(text), variables)
    value = parser.parse_expr()
    end = parser.peek()
    if end.kind != "end":
        raise ParseError(f"unexpected trailing input {end.text!r}", end.line, end.column)
    return value


def parse_polynomial(text: str, variables: Sequence[str]) -> Polynomial:
    """Parse an expression that must simplify to a polynomial."""
    value = parse_rational(text, variables)
    if not value.is_polynomial():
        raise ParseError(f"expression {text!r} is not a polynomial")
    return value.numerator
