"""
Textual grammar for numbers, polynomials, 1-forms, points and matrices.

    expr   := term (("+" | "-") term)*
    term   := unary (("*" | "/") unary)*
    unary  := ("+" | "-") unary | power
    power  := atom ("^" ["-"] INTEGER)?
    atom   := INTEGER | NAME | "sqrt" "(" ["-"] INTEGER ")" | "(" expr ")"

NAME is ``x``, ``y``, ``dx``, ``dy`` or a named constant. Division is only
by constants. A 1-form is any expression linear in ``dx`` and ``dy``.
"""
import re
from dataclasses import dataclass
from typing import List, Mapping, Optional, Tuple

from .errors import FormSyntaxError, ZeroForm
from .exactnum import QuadraticNumber
from .symalg import OneForm, Poly2

_TOKEN = re.compile(r"\s*(?:(?P<int>\d+)|(?P<name>[A-Za-z_][A-Za-z_0-9]*)|(?P<op>[-+*/^(),;\[\]]))")

RESERVED = frozenset({"x", "y", "dx", "dy", "sqrt"})


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    position: int


def tokenize(text: str) -> List[Token]:
    tokens = []
    position = 0
    while position < len(text):
        if text[position:].strip() == "":
            break
        match = _TOKEN.match(text, position)
        if not match:
            offset = position + len(text[position:]) - len(text[position:].lstrip())
            raise FormSyntaxError(f"unexpected character {text[offset]!r}", offset)
        kind = match.lastgroup
        start = match.start(kind)
        tokens.append(Token(kind, match.group(kind), start))
        position = match.end()
    tokens.append(Token("end", "", len(text)))
    return tokens


@dataclass(frozen=True)
class _Value:
    """zero-form part plus the coefficients of dx and dy."""

    scalar: Poly2
    dx: Poly2
    dy: Poly2

    @property
    def has_differential(self) -> bool:
        return not (self.dx.is_zero and self.dy.is_zero)

    def __add__(self, other):
        return _Value(self.scalar + other.scalar, self.dx + other.dx, self.dy + other.dy)

    def __neg__(self):
        return _Value(-self.scalar, -self.dx, -self.dy)


class _Parser:
    def __init__(self, text: str, constants: Optional[Mapping[str, QuadraticNumber]], chart: Optional[str]):
        self.text = text
        self.tokens = tokenize(text)
        self.index = 0
        self.chart = chart
        self.constants = dict(constants or {})
        for name in self.constants:
            if name in RESERVED:
                raise ValueError(f"{name!r} is reserved and cannot name a constant")

    # -- token helpers ---------------------------------------------------

    @property
    def current(self) -> Token:
        return self.tokens[self.index]

    def advance(self) -> Token:
        token = self.current
        self.index += 1
        return token

    def accept(self, text: str) -> bool:
        if self.current.kind == "op" and self.current.text == text:
            self.index += 1
            return True
        return False

    def expect(self, text: str) -> Token:
        if not (self.current.kind == "op" and self.current.text == text):
            raise FormSyntaxError(f"expected {text!r}", self.current.position)
        return self.advance()

    def expect_end(self):
        if self.current.kind != "end":
            raise FormSyntaxError(f"unexpected {self.current.text!r}", self.current.position)

    # -- values ----------------------------------------------------------

    def _zero(self) -> Poly2:
        return Poly2({}, self.chart)

    def _scalar(self, p: Poly2) -> _Value:
        return _Value(p.with_chart(self.chart), self._zero(), self._zero())

    # -- grammar ---------------------------------------------------------

    def expr(self) -> _Value:
        value = self.term()
        while True:
            if self.accept("+"):
                value = value + self.term()
            elif self.accept("-"):
                value = value + (-self.term())
            else:
                return value

    def term(self) -> _Value:
        value = self.unary()
        while True:
            token = self.current
            if self.accept("*"):
                value = self._multiply(value, self.unary(), token.position)
            elif self.accept("/"):
                value = self._divide(value, self.unary(), token.position)
            else:
                return value

    def unary(self) -> _Value:
        if self.accept("-"):
            return -self.unary()
        if self.accept("+"):
            return self.unary()
        return self.power()

    def power(self) -> _Value:
        base = self.atom()
        token = self.current
        if not self.accept("^"):
            return base
        negative = self.accept("-")
        if self.current.kind != "int":
            raise FormSyntaxError("expected an integer exponent", self.current.position)
        exponent = int(self.advance().text)
        if base.has_differential:
            raise FormSyntaxError("a differential cannot be raised to a power", token.position)
        if negative:
            if not base.scalar.is_constant or base.scalar.is_zero:
                raise FormSyntaxError("negative powers are only allowed for nonzero constants", token.position)
            inverse = base.scalar.constant_term().inverse()
            return self._scalar(Poly2.constant(inverse ** exponent))
        return self._scalar(base.scalar ** exponent)

    def atom(self) -> _Value:
        token = self.current
        if token.kind == "int":
            self.advance()
            return self._scalar(Poly2.constant(int(token.text)))
        if token.kind == "name":
            self.advance()
            return self._name(token)
        if self.accept("("):
            value = self.expr()
            self.expect(")")
            return value
        if token.kind == "end":
            raise FormSyntaxError("unexpected end of input", token.position)
        raise FormSyntaxError(f"unexpected {token.text!r}", token.position)

    def _name(self, token: Token) -> _Value:
        name = token.text
        if name == "x" or name == "y":
            return self._scalar(Poly2.var(name, self.chart))
        if name == "dx":
            return _Value(self._zero(), Poly2.constant(1, self.chart), self._zero())
        if name == "dy":
            return _Value(self._zero(), self._zero(), Poly2.constant(1, self.chart))
        if name == "sqrt":
            self.expect("(")
            negative = self.accept("-")
            if self.current.kind != "int":
                raise FormSyntaxError("sqrt takes an integer argument", self.current.position)
            radicand = int(self.advance().text) * (-1 if negative else 1)
            self.expect(")")
            value = QuadraticNumber.sqrt(radicand) if radicand else QuadraticNumber(0)
            return self._scalar(Poly2.constant(value))
        if name in self.constants:
            return self._scalar(Poly2.constant(self.constants[name]))
        raise FormSyntaxError(f"unknown name {name!r}", token.position)

    def _multiply(self, left: _Value, right: _Value, position: int) -> _Value:
        if left.has_differential and right.has_differential:
            raise FormSyntaxError("product of two differentials", position)
        if right.has_differential:
            left, right = right, left
        factor = right.scalar
        return _Value(left.scalar * factor, left.dx * factor, left.dy * factor)

    def _divide(self, left: _Value, right: _Value, position: int) -> _Value:
        if right.has_differential or not right.scalar.is_constant:
            raise FormSyntaxError("division is only allowed by constants", position)
        if right.scalar.is_zero:
            raise FormSyntaxError("division by zero", position)
        inverse = right.scalar.constant_term().inverse()
        return _Value(left.scalar.scale(inverse), left.dx.scale(inverse), left.dy.scale(inverse))

    # -- entry points ----------------------------------------------------

    def whole(self) -> _Value:
        value = self.expr()
        self.expect_end()
        return value

    def number(self) -> QuadraticNumber:
        start = self.current.position
        value = self.expr()
        if value.has_differential or not value.scalar.is_constant:
            raise FormSyntaxError("expected a number", start)
        return value.scalar.constant_term()


def parse_poly(text: str, constants: Optional[Mapping[str, QuadraticNumber]] = None,
               chart: Optional[str] = None) -> Poly2:
    value = _Parser(text, constants, chart).whole()
    if value.has_differential:
        raise FormSyntaxError("expected a polynomial, found a differential", 0)
    return value.scalar


def parse_form(text: str, constants: Optional[Mapping[str, QuadraticNumber]] = None,
               chart: Optional[str] = None) -> OneForm:
    """Parse ``<poly>*dx + <poly>*dy``; coefficients are kept as written."""
    value = _Parser(text, constants, chart).whole()
    if not value.scalar.is_zero:
        raise FormSyntaxError("every term of a 1-form needs dx or dy", 0)
    if not value.has_differential:
        raise ZeroForm(f"{text!r} is the zero form")
    return OneForm(value.dx, value.dy, chart)


def parse_number(text: str, constants: Optional[Mapping[str, QuadraticNumber]] = None) -> QuadraticNumber:
    parser = _Parser(text, constants, None)
    value = parser.number()
    parser.expect_end()
    return value


def parse_point(text: str, constants: Optional[Mapping[str, QuadraticNumber]] = None) -> Tuple[QuadraticNumber, QuadraticNumber]:
    parser = _Parser(text, constants, None)
    first = parser.number()
    parser.expect(",")
    second = parser.number()
    parser.expect_end()
    return first, second


def parse_matrix(text: str, constants: Optional[Mapping[str, QuadraticNumber]] = None) -> List[List[QuadraticNumber]]:
    """``[a,b;c,d]``: rows separated by ';', entries by ','."""
    parser = _Parser(text, constants, None)
    parser.expect("[")
    rows = [[parser.number()]]
    while True:
        if parser.accept(","):
            rows[-1].append(parser.number())
        elif parser.accept(";"):
            rows.append([parser.number()])
        else:
            break
    closing = parser.expect("]")
    parser.expect_end()
    if len({len(row) for row in rows}) != 1:
        raise FormSyntaxError("matrix rows have different lengths", closing.position)
    return rows
