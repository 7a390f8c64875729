"""Expression parsing for polynomials and Laurent path coordinates.

Grammar (whitespace insensitive)::

    expression := ['-'] term (('+' | '-') term)*
    term       := factor (('*' | '/') factor)*
    factor     := atom ['^' exponent]
    atom       := NUMBER | IDENT | '(' expression ')'
    exponent   := ['-'] NUMBER      # negative exponents in Laurent mode only

Notes on the conventions:

* ``^`` binds tighter than unary minus, so ``-x^2`` is ``-(x^2)``.
* Implicit multiplication is rejected: ``2x`` is a syntax error.
* ``/`` is division by a nonzero constant, which is how rational literals
  such as ``1/2`` enter; dividing by a non-constant is an error.
* ``i`` is the imaginary unit and cannot be declared as a variable.

Laurent mode parses a single-variable expression where ``^`` may take a
negative integer, e.g. ``t^-2``; a comma-separated list of these is a path
literal such as ``t, t^-2, 0``.
"""

from __future__ import annotations

import re
from typing import Sequence

from .poly import IMAGINARY_UNIT, LaurentPoly, Polynomial
from .scalar import GaussianRational


class ParseError(ValueError):
    """Syntax or symbol error, carrying the offending position."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


_TOKEN_RE = re.compile(
    r"\s*(?:(?P<num>\d+)|(?P<ident>[A-Za-z_][A-Za-z0-9_]*)|(?P<op>[-+*/^()]))"
)


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            stripped = text[pos:].lstrip()
            if not stripped:
                break
            bad_at = len(text) - len(stripped)
            raise ParseError(f"unexpected character {text[bad_at]!r}", bad_at)
        if m.group("num") is not None:
            tokens.append(("num", m.group("num"), m.start("num")))
        elif m.group("ident") is not None:
            tokens.append(("ident", m.group("ident"), m.start("ident")))
        else:
            tokens.append(("op", m.group("op"), m.start("op")))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    """Recursive-descent parser over an algebra of values.

    The algebra argument supplies ``constant``, ``imaginary``, ``variable``
    and whether negative exponents are legal, so one grammar serves both
    multivariate polynomials and Laurent path coordinates.
    """

    def __init__(self, text: str, algebra):
        self.tokens = _tokenize(text)
        self.k = 0
        self.algebra = algebra

    def peek(self):
        return self.tokens[self.k]

    def advance(self):
        tok = self.tokens[self.k]
        self.k += 1
        return tok

    def expect_op(self, op: str):
        kind, text, pos = self.peek()
        if kind != "op" or text != op:
            raise ParseError(f"expected {op!r}", pos)
        return self.advance()

    def parse(self):
        value = self.expression()
        kind, text, pos = self.peek()
        if kind != "end":
            raise ParseError(f"unexpected {text!r}", pos)
        return value

    def expression(self):
        negate = False
        kind, text, _ = self.peek()
        if kind == "op" and text == "-":
            self.advance()
            negate = True
        value = self.term()
        if negate:
            value = -value
        while True:
            kind, text, _ = self.peek()
            if kind == "op" and text in "+-":
                self.advance()
                rhs = self.term()
                value = value + rhs if text == "+" else value - rhs
            else:
                return value

    def term(self):
        value = self.factor()
        while True:
            kind, text, pos = self.peek()
            if kind == "op" and text in "*/":
                self.advance()
                rhs = self.factor()
                if text == "*":
                    value = value * rhs
                else:
                    value = self.algebra.divide(value, rhs, pos)
            else:
                return value

    def factor(self):
        value = self.atom()
        kind, text, _ = self.peek()
        if kind == "op" and text == "^":
            self.advance()
            value = value ** self.exponent()
        return value

    def exponent(self) -> int:
        sign = 1
        kind, text, pos = self.peek()
        if kind == "op" and text == "-":
            if not self.algebra.allow_negative_exponents:
                raise ParseError("negative exponents are not allowed here", pos)
            self.advance()
            sign = -1
        kind, text, pos = self.peek()
        if kind != "num":
            raise ParseError("expected an integer exponent", pos)
        self.advance()
        return sign * int(text)

    def atom(self):
        kind, text, pos = self.advance()
        if kind == "num":
            return self.algebra.constant(int(text))
        if kind == "ident":
            if text == IMAGINARY_UNIT:
                return self.algebra.imaginary()
            return self.algebra.variable(text, pos)
        if kind == "op" and text == "(":
            value = self.expression()
            self.expect_op(")")
            return value
        raise ParseError(f"unexpected {text!r}" if text else "unexpected end of input", pos)


class _PolynomialAlgebra:
    allow_negative_exponents = False

    def __init__(self, variables: Sequence[str]):
        self.vars = tuple(variables)

    def constant(self, n: int) -> Polynomial:
        return Polynomial.constant(self.vars, n)

    def imaginary(self) -> Polynomial:
        return Polynomial.constant(self.vars, GaussianRational(0, 1))

    def variable(self, name: str, pos: int) -> Polynomial:
        if name not in self.vars:
            raise ParseError(f"unknown identifier {name!r}", pos)
        return Polynomial.variable(self.vars, name)

    @staticmethod
    def divide(value: Polynomial, rhs: Polynomial, pos: int) -> Polynomial:
        if not rhs.is_constant():
            raise ParseError("division is only allowed by constants", pos)
        c = rhs.constant_value()
        if c.is_zero():
            raise ParseError("division by zero", pos)
        return value.scale(GaussianRational(1) / c)


class _LaurentAlgebra:
    allow_negative_exponents = True

    def __init__(self, var: str):
        self.var = var

    def constant(self, n: int) -> LaurentPoly:
        return LaurentPoly(self.var, {0: n})

    def imaginary(self) -> LaurentPoly:
        return LaurentPoly(self.var, {0: GaussianRational(0, 1)})

    def variable(self, name: str, pos: int) -> LaurentPoly:
        if name != self.var:
            raise ParseError(f"unknown identifier {name!r}", pos)
        return LaurentPoly(self.var, {1: 1})

    @staticmethod
    def divide(value: LaurentPoly, rhs: LaurentPoly, pos: int) -> LaurentPoly:
        if set(rhs.terms) - {0}:
            raise ParseError("division is only allowed by constants", pos)
        c = rhs.constant_term()
        if c.is_zero():
            raise ParseError("division by zero", pos)
        return value * (GaussianRational(1) / c)


def parse_polynomial(text: str, variables: Sequence[str]) -> Polynomial:
    """Parse an expression into a canonical expanded polynomial."""
    return _Parser(text, _PolynomialAlgebra(variables)).parse()


def parse_laurent(text: str, var: str = "t") -> LaurentPoly:
    """Parse one Laurent expression such as ``t^-2`` or ``3*t^2 - 1``."""
    return _Parser(text, _LaurentAlgebra(var)).parse()


def parse_path(text: str, var: str = "t") -> tuple[LaurentPoly, ...]:
    """Parse a comma-separated path literal, e.g. ``t, t^-2, 0``."""
    pieces = text.split(",")
    if not pieces or all(not p.strip() for p in pieces):
        raise ParseError("empty path literal", 0)
    return tuple(parse_laurent(piece, var) for piece in pieces)
