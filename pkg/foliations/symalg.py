"""
Exact bivariate polynomial algebra in labelled affine charts.

``Poly2`` is a sparse map from exponent pairs to exact coefficients. On top of
it sit rational functions, rational maps between charts, polynomial 1-forms
and 2-forms, with the pullback and wedge every other module computes with.
Variables are always called ``x`` and ``y``; the chart label says which
affine chart of which surface they belong to.
"""
import logging
from typing import Dict, Iterable, Mapping, Optional, Tuple, Union

import sympy

from .errors import ChartMismatch, FieldMismatch, IndeterminateForm, ZeroForm, ZeroInverse
from .exactnum import Number, QuadraticNumber, from_domain_element, sympy_domain, to_domain_element

logger = logging.getLogger(__name__)

Monomial = Tuple[int, int]

ZERO = QuadraticNumber(0)
ONE = QuadraticNumber(1)

_X, _Y = sympy.symbols("x y")


def _merge_chart(p: "Poly2", q: "Poly2") -> Optional[str]:
    if p.is_constant:
        return q.chart if not q.is_constant else (p.chart or q.chart)
    if q.is_constant:
        return p.chart
    if p.chart is not None and q.chart is not None and p.chart != q.chart:
        raise ChartMismatch(f"chart {p.chart!r} cannot be combined with chart {q.chart!r}")
    return p.chart or q.chart


def _common_field(fields: Iterable[Optional[int]]) -> Optional[int]:
    found = {d for d in fields if d is not None}
    if len(found) > 1:
        raise FieldMismatch(f"coefficients from several fields: {sorted(found)}")
    return found.pop() if found else None


class Poly2:
    """Sparse polynomial in x, y with exact coefficients. Treat as immutable."""

    __slots__ = ("terms", "chart")

    def __init__(self, terms: Optional[Mapping[Monomial, Number]] = None, chart: Optional[str] = None):
        cleaned: Dict[Monomial, QuadraticNumber] = {}
        for (i, j), coeff in (terms or {}).items():
            if i < 0 or j < 0:
                raise ValueError(f"negative exponent in monomial {(i, j)}")
            value = QuadraticNumber.coerce(coeff)
            if value:
                cleaned[(int(i), int(j))] = value
        _common_field(c.field for c in cleaned.values())
        self.terms = cleaned
        self.chart = chart

    # -- constructors ----------------------------------------------------

    @classmethod
    def constant(cls, value: Number, chart: Optional[str] = None) -> "Poly2":
        return cls({(0, 0): value}, chart)

    @classmethod
    def monomial(cls, i: int, j: int, coeff: Number = 1, chart: Optional[str] = None) -> "Poly2":
        return cls({(i, j): coeff}, chart)

    @classmethod
    def var(cls, name: str, chart: Optional[str] = None) -> "Poly2":
        if name == "x":
            return cls.monomial(1, 0, 1, chart)
        if name == "y":
            return cls.monomial(0, 1, 1, chart)
        raise ValueError(f"unknown variable {name!r}")

    @classmethod
    def coerce(cls, value: Union["Poly2", Number], chart: Optional[str] = None) -> "Poly2":
        if isinstance(value, Poly2):
            return value
        return cls.constant(value, chart)

    def with_chart(self, chart: Optional[str]) -> "Poly2":
        if chart == self.chart:
            return self
        return Poly2(self.terms, chart)

    # -- inspection ------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self.terms

    @property
    def is_constant(self) -> bool:
        return all(m == (0, 0) for m in self.terms)

    @property
    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    @property
    def field(self) -> Optional[int]:
        return _common_field(c.field for c in self.terms.values())

    def constant_term(self) -> QuadraticNumber:
        return self.terms.get((0, 0), ZERO)

    def coefficient(self, i: int, j: int) -> QuadraticNumber:
        return self.terms.get((i, j), ZERO)

    @property
    def degree(self) -> int:
        return max((i + j for i, j in self.terms), default=-1)

    def degree_in(self, var: str) -> int:
        index = _var_index(var)
        return max((m[index] for m in self.terms), default=-1)

    def order_in(self, var: str) -> int:
        """Smallest exponent of var over all terms (vanishing order along var = 0)."""
        index = _var_index(var)
        return min((m[index] for m in self.terms), default=-1)

    def leading_term(self) -> Tuple[Monomial, QuadraticNumber]:
        """Lexicographic leading term with x > y."""
        if not self.terms:
            raise ZeroInverse("the zero polynomial has no leading term")
        mono = max(self.terms)
        return mono, self.terms[mono]

    def leading_coefficient(self) -> QuadraticNumber:
        return self.leading_term()[1]

    def coefficients_in(self, var: str) -> Dict[int, "Poly2"]:
        """Group by the power of var; values are polynomials in the other variable."""
        index = _var_index(var)
        grouped: Dict[int, Dict[Monomial, QuadraticNumber]] = {}
        for mono, coeff in self.terms.items():
            rest = (0, mono[1]) if index == 0 else (mono[0], 0)
            grouped.setdefault(mono[index], {})[rest] = coeff
        return {power: Poly2(terms, self.chart) for power, terms in grouped.items()}

    # -- arithmetic ------------------------------------------------------

    def __add__(self, other):
        if not isinstance(other, Poly2):
            try:
                other = Poly2.constant(other)
            except TypeError:
                return NotImplemented
        chart = _merge_chart(self, other)
        terms = dict(self.terms)
        for mono, coeff in other.terms.items():
            terms[mono] = terms.get(mono, ZERO) + coeff
        return Poly2(terms, chart)

    __radd__ = __add__

    def __neg__(self):
        return Poly2({m: -c for m, c in self.terms.items()}, self.chart)

    def __sub__(self, other):
        if not isinstance(other, Poly2):
            try:
                other = Poly2.constant(other)
            except TypeError:
                return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, Poly2):
            try:
                return self.scale(QuadraticNumber.coerce(other))
            except TypeError:
                return NotImplemented
        chart = _merge_chart(self, other)
        terms: Dict[Monomial, QuadraticNumber] = {}
        for (i1, j1), c1 in self.terms.items():
            for (i2, j2), c2 in other.terms.items():
                key = (i1 + i2, j1 + j2)
                terms[key] = terms.get(key, ZERO) + c1 * c2
        return Poly2(terms, chart)

    __rmul__ = __mul__

    def scale(self, factor: Number) -> "Poly2":
        factor = QuadraticNumber.coerce(factor)
        return Poly2({m: c * factor for m, c in self.terms.items()}, self.chart)

    def __pow__(self, exponent: int):
        if not isinstance(exponent, int) or exponent < 0:
            return NotImplemented
        result = Poly2.constant(1, self.chart)
        for _ in range(exponent):
            result = result * self
        return result

    def monic(self) -> "Poly2":
        if self.is_zero:
            return self
        return self.scale(self.leading_coefficient().inverse())

    # -- division --------------------------------------------------------

    def divmod(self, divisor: "Poly2") -> Tuple["Poly2", "Poly2"]:
        """Multivariate division with remainder by one divisor, lex order x > y."""
        if divisor.is_zero:
            raise ZeroInverse("division by the zero polynomial")
        chart = _merge_chart(self, divisor)
        (li, lj), lc = divisor.leading_term()
        rest = dict(self.terms)
        quotient: Dict[Monomial, QuadraticNumber] = {}
        remainder: Dict[Monomial, QuadraticNumber] = {}
        while rest:
            mono = max(rest)
            coeff = rest[mono]
            if mono[0] >= li and mono[1] >= lj:
                shift = (mono[0] - li, mono[1] - lj)
                factor = coeff / lc
                quotient[shift] = quotient.get(shift, ZERO) + factor
                for (i, j), dc in divisor.terms.items():
                    key = (i + shift[0], j + shift[1])
                    value = rest.get(key, ZERO) - factor * dc
                    if value:
                        rest[key] = value
                    else:
                        rest.pop(key, None)
            else:
                remainder[mono] = coeff
                del rest[mono]
        return Poly2(quotient, chart), Poly2(remainder, chart)

    def divides(self, other: "Poly2") -> bool:
        """True iff self divides other."""
        return other.divmod(self)[1].is_zero

    def exact_div(self, divisor: "Poly2") -> "Poly2":
        quotient, remainder = self.divmod(divisor)
        if not remainder.is_zero:
            raise ValueError(f"{divisor} does not divide {self}")
        return quotient

    # -- calculus and evaluation ----------------------------------------

    def evaluate(self, x: Number, y: Number) -> QuadraticNumber:
        x, y = QuadraticNumber.coerce(x), QuadraticNumber.coerce(y)
        total = ZERO
        for (i, j), coeff in self.terms.items():
            total = total + coeff * x ** i * y ** j
        return total

    def partial(self, var: str) -> "Poly2":
        index = _var_index(var)
        terms = {}
        for mono, coeff in self.terms.items():
            power = mono[index]
            if power:
                key = (mono[0] - 1, mono[1]) if index == 0 else (mono[0], mono[1] - 1)
                terms[key] = coeff * power
        return Poly2(terms, self.chart)

    def restrict(self, var: str, value: Number) -> "Poly2":
        """Set var to a constant; the result only involves the other variable."""
        index = _var_index(var)
        value = QuadraticNumber.coerce(value)
        terms: Dict[Monomial, QuadraticNumber] = {}
        for mono, coeff in self.terms.items():
            key = (0, mono[1]) if index == 0 else (mono[0], 0)
            terms[key] = terms.get(key, ZERO) + coeff * value ** mono[index]
        return Poly2(terms, self.chart)

    def translate(self, dx: Number, dy: Number) -> "Poly2":
        """p(x + dx, y + dy)."""
        shifted_x = Poly2.var("x", self.chart) + QuadraticNumber.coerce(dx)
        shifted_y = Poly2.var("y", self.chart) + QuadraticNumber.coerce(dy)
        total = Poly2({}, self.chart)
        for (i, j), coeff in self.terms.items():
            total = total + (shifted_x ** i) * (shifted_y ** j) * coeff
        return total

    def substitute(self, x_value, y_value) -> "RationalFn2":
        """p(X, Y) for rational functions X, Y, over a common denominator."""
        xr, yr = RationalFn2.coerce(x_value), RationalFn2.coerce(y_value)
        deg_x, deg_y = self.degree_in("x"), self.degree_in("y")
        if self.is_zero:
            return RationalFn2(Poly2({}, xr.chart or yr.chart))
        xn, xd = _powers(xr.num, deg_x), _powers(xr.den, deg_x)
        yn, yd = _powers(yr.num, deg_y), _powers(yr.den, deg_y)
        num = Poly2({}, xr.chart or yr.chart)
        for (i, j), coeff in self.terms.items():
            num = num + xn[i] * xd[deg_x - i] * yn[j] * yd[deg_y - j] * coeff
        return RationalFn2(num, xd[deg_x] * yd[deg_y])

    # -- sympy bridge ----------------------------------------------------

    def to_sympy_poly(self, d: Optional[int]) -> sympy.Poly:
        rep = {mono: to_domain_element(coeff, d) for mono, coeff in self.terms.items()}
        return sympy.Poly.from_dict(rep, _X, _Y, domain=sympy_domain(d))

    @classmethod
    def from_sympy_poly(cls, poly: sympy.Poly, d: Optional[int], chart: Optional[str] = None) -> "Poly2":
        terms = {}
        for mono, coeff in poly.as_dict(native=True).items():
            terms[(mono[0], mono[1])] = from_domain_element(coeff, d)
        return cls(terms, chart)

    def to_sympy(self):
        return self.to_sympy_poly(self.field).as_expr()

    # -- comparison and text --------------------------------------------

    def __eq__(self, other):
        if isinstance(other, Poly2):
            return self.terms == other.terms
        try:
            return self == Poly2.constant(other)
        except TypeError:
            return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for mono in sorted(self.terms, reverse=True):
            text = _term_text(mono, self.terms[mono])
            if not parts:
                parts.append(text)
            elif text.startswith("-"):
                parts.append(f" - {text[1:]}")
            else:
                parts.append(f" + {text}")
        return "".join(parts)

    def __repr__(self) -> str:
        return f"Poly2({self}, chart={self.chart!r})"


def _var_index(var: str) -> int:
    if var == "x":
        return 0
    if var == "y":
        return 1
    raise ValueError(f"unknown variable {var!r}")


def _powers(p: Poly2, top: int):
    powers = [Poly2.constant(1, p.chart)]
    for _ in range(top):
        powers.append(powers[-1] * p)
    return powers


def _term_text(mono: Monomial, coeff: QuadraticNumber) -> str:
    factors = []
    for name, power in zip("xy", mono):
        if power == 1:
            factors.append(name)
        elif power > 1:
            factors.append(f"{name}^{power}")
    monomial = "*".join(factors)
    if not monomial:
        return str(coeff)
    if coeff == 1:
        return monomial
    if coeff == -1:
        return f"-{monomial}"
    return f"{coeff}*{monomial}"


def poly_add(p: Poly2, q: Poly2) -> Poly2:
    return p + q


def poly_mul(p: Poly2, q: Poly2) -> Poly2:
    return p * q


def poly_eval(p: Poly2, point: Tuple[Number, Number]) -> QuadraticNumber:
    return p.evaluate(*point)


def poly_partial(p: Poly2, var: str) -> Poly2:
    return p.partial(var)


def poly_gcd(p: Poly2, q: Poly2) -> Poly2:
    """Monic greatest common divisor; the zero polynomial only for gcd(0, 0)."""
    chart = _merge_chart(p, q)
    if p.is_zero:
        return q.monic().with_chart(chart)
    if q.is_zero:
        return p.monic().with_chart(chart)
    if p.is_monomial or q.is_monomial:
        i = min(p.order_in("x"), q.order_in("x"))
        j = min(p.order_in("y"), q.order_in("y"))
        return Poly2.monomial(i, j, 1, chart)
    d = _common_field((p.field, q.field))
    g = p.to_sympy_poly(d).gcd(q.to_sympy_poly(d))
    return Poly2.from_sympy_poly(g, d, chart).monic()


def poly_lcm(p: Poly2, q: Poly2) -> Poly2:
    g = poly_gcd(p, q)
    return (p * q).exact_div(g).monic()


class RationalFn2:
    """num/den with the common factor divided out and a monic denominator."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=None, reduce: bool = True):
        num = Poly2.coerce(num)
        den = Poly2.constant(1, num.chart) if den is None else Poly2.coerce(den)
        if den.is_zero:
            raise ZeroInverse("rational function with zero denominator")
        chart = _merge_chart(num, den)
        num, den = num.with_chart(chart), den.with_chart(chart)
        if num.is_zero:
            den = Poly2.constant(1, chart)
        elif reduce and not den.is_constant:
            g = poly_gcd(num, den)
            if not g.is_constant:
                num, den = num.exact_div(g), den.exact_div(g)
        lead = den.leading_coefficient()
        if lead != 1:
            inverse = lead.inverse()
            num, den = num.scale(inverse), den.scale(inverse)
        self.num = num
        self.den = den

    @classmethod
    def coerce(cls, value) -> "RationalFn2":
        if isinstance(value, RationalFn2):
            return value
        return cls(Poly2.coerce(value))

    @property
    def chart(self) -> Optional[str]:
        return self.num.chart or self.den.chart

    def with_chart(self, chart: Optional[str]) -> "RationalFn2":
        return RationalFn2(self.num.with_chart(chart), self.den.with_chart(chart), reduce=False)

    @property
    def is_zero(self) -> bool:
        return self.num.is_zero

    @property
    def is_polynomial(self) -> bool:
        return self.den.is_constant

    @property
    def is_constant(self) -> bool:
        return self.num.is_constant and self.den.is_constant

    def as_poly(self) -> Poly2:
        if not self.is_polynomial:
            raise ValueError(f"{self} is not a polynomial")
        return self.num.scale(self.den.constant_term().inverse())

    def __add__(self, other):
        other = RationalFn2.coerce(other)
        return RationalFn2(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return RationalFn2(-self.num, self.den, reduce=False)

    def __sub__(self, other):
        return self + (-RationalFn2.coerce(other))

    def __rsub__(self, other):
        return RationalFn2.coerce(other) - self

    def __mul__(self, other):
        other = RationalFn2.coerce(other)
        return RationalFn2(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def inverse(self) -> "RationalFn2":
        if self.is_zero:
            raise ZeroInverse("the zero rational function has no inverse")
        return RationalFn2(self.den, self.num, reduce=False)

    def __truediv__(self, other):
        return self * RationalFn2.coerce(other).inverse()

    def __rtruediv__(self, other):
        return RationalFn2.coerce(other) * self.inverse()

    def __pow__(self, exponent: int):
        if not isinstance(exponent, int):
            return NotImplemented
        num, den = self.num ** abs(exponent), self.den ** abs(exponent)
        if exponent < 0:
            if self.is_zero:
                raise ZeroInverse("negative power of zero")
            num, den = den, num
        return RationalFn2(num, den, reduce=False)

    def evaluate(self, x: Number, y: Number) -> QuadraticNumber:
        den = self.den.evaluate(x, y)
        if not den:
            raise ZeroInverse(f"{self} is undefined at ({x}, {y})")
        return self.num.evaluate(x, y) / den

    def defined_at(self, x: Number, y: Number) -> bool:
        return bool(self.den.evaluate(x, y))

    def partial(self, var: str) -> "RationalFn2":
        return RationalFn2(
            self.num.partial(var) * self.den - self.num * self.den.partial(var),
            self.den * self.den,
        )

    def substitute(self, x_value, y_value) -> "RationalFn2":
        return self.num.substitute(x_value, y_value) / self.den.substitute(x_value, y_value)

    def __eq__(self, other):
        try:
            other = RationalFn2.coerce(other)
        except TypeError:
            return NotImplemented
        return self.num * other.den == other.num * self.den

    __hash__ = None

    def __str__(self) -> str:
        if self.den == 1:
            return str(self.num)
        return f"({self.num})/({self.den})"

    def __repr__(self) -> str:
        return f"RationalFn2({self})"


class RationalMap2:
    """(x, y) -> (first, second) from chart ``source`` to chart ``target``."""

    __slots__ = ("first", "second", "source", "target")

    def __init__(self, first, second, source: Optional[str] = None, target: Optional[str] = None):
        first, second = RationalFn2.coerce(first), RationalFn2.coerce(second)
        if first.is_constant and second.is_constant:
            raise IndeterminateForm("a rational map needs a non-constant component")
        self.first = first.with_chart(source)
        self.second = second.with_chart(source)
        self.source = source
        self.target = target

    @classmethod
    def identity(cls, chart: Optional[str] = None) -> "RationalMap2":
        return cls(Poly2.var("x", chart), Poly2.var("y", chart), chart, chart)

    def __call__(self, x: Number, y: Number) -> Tuple[QuadraticNumber, QuadraticNumber]:
        return self.first.evaluate(x, y), self.second.evaluate(x, y)

    def defined_at(self, x: Number, y: Number) -> bool:
        return self.first.defined_at(x, y) and self.second.defined_at(x, y)

    def compose(self, inner: "RationalMap2") -> "RationalMap2":
        """self after inner."""
        if inner.target is not None and self.source is not None and inner.target != self.source:
            raise ChartMismatch(f"cannot follow a map into {inner.target!r} by a map from {self.source!r}")
        return RationalMap2(
            self.first.substitute(inner.first, inner.second),
            self.second.substitute(inner.first, inner.second),
            inner.source,
            self.target,
        )

    def is_identity(self) -> bool:
        return self.first == Poly2.var("x") and self.second == Poly2.var("y")

    def jacobian_at(self, x: Number, y: Number):
        return (
            (self.first.partial("x").evaluate(x, y), self.first.partial("y").evaluate(x, y)),
            (self.second.partial("x").evaluate(x, y), self.second.partial("y").evaluate(x, y)),
        )

    def __str__(self) -> str:
        return f"({self.first}, {self.second}) [{self.source} -> {self.target}]"

    def __repr__(self) -> str:
        return f"RationalMap2{self}"


def compose(outer: RationalMap2, inner: RationalMap2) -> RationalMap2:
    return outer.compose(inner)


def is_identity(phi: RationalMap2) -> bool:
    return phi.is_identity()


class TwoForm:
    """coefficient * dx^dy."""

    __slots__ = ("coefficient",)

    def __init__(self, coefficient):
        self.coefficient = RationalFn2.coerce(coefficient)

    @property
    def is_zero(self) -> bool:
        return self.coefficient.is_zero

    def __neg__(self):
        return TwoForm(-self.coefficient)

    def __eq__(self, other):
        if not isinstance(other, TwoForm):
            return NotImplemented
        return self.coefficient == other.coefficient

    __hash__ = None

    def __str__(self) -> str:
        return f"({self.coefficient})*dx^dy"


class OneForm:
    """A dx + B dy with polynomial coefficients in one chart."""

    __slots__ = ("a", "b", "chart")

    def __init__(self, a, b, chart: Optional[str] = None):
        a, b = Poly2.coerce(a), Poly2.coerce(b)
        if a.is_zero and b.is_zero:
            raise ZeroForm("a 1-form needs a nonzero coefficient")
        chart = chart or _merge_chart(a, b)
        self.a = a.with_chart(chart)
        self.b = b.with_chart(chart)
        self.chart = chart

    def with_chart(self, chart: Optional[str]) -> "OneForm":
        return OneForm(self.a, self.b, chart)

    def primitive(self) -> "OneForm":
        """Divide out the common factor; scale so the leading coefficient of B is -1 (of A is 1 when B = 0)."""
        a, b = self.a, self.b
        g = poly_gcd(a, b)
        if not g.is_constant:
            a, b = a.exact_div(g), b.exact_div(g)
        factor = -b.leading_coefficient().inverse() if not b.is_zero else a.leading_coefficient().inverse()
        return OneForm(a.scale(factor), b.scale(factor), self.chart)

    def is_primitive(self) -> bool:
        return self == self.primitive()

    def scale(self, factor) -> "OneForm":
        factor = Poly2.coerce(factor)
        return OneForm(self.a * factor, self.b * factor, self.chart)

    def proportional(self, other: "OneForm") -> bool:
        return wedge(self, other).is_zero

    def evaluate(self, x: Number, y: Number) -> Tuple[QuadraticNumber, QuadraticNumber]:
        return self.a.evaluate(x, y), self.b.evaluate(x, y)

    def __eq__(self, other):
        if not isinstance(other, OneForm):
            return NotImplemented
        return self.a == other.a and self.b == other.b

    def __hash__(self):
        return hash((self.a, self.b))

    def __str__(self) -> str:
        parts = [_form_part(self.a, "dx"), _form_part(self.b, "dy")]
        parts = [p for p in parts if p]
        text = parts[0]
        for part in parts[1:]:
            text += f" - {part[1:]}" if part.startswith("-") else f" + {part}"
        return text

    def __repr__(self) -> str:
        return f"OneForm({self}, chart={self.chart!r})"


def _form_part(p: Poly2, differential: str) -> str:
    if p.is_zero:
        return ""
    if not p.is_monomial:
        return f"({p})*{differential}"
    text = str(p)
    if text == "1":
        return differential
    if text == "-1":
        return f"-{differential}"
    return f"{text}*{differential}"


def wedge(omega1: OneForm, omega2: OneForm) -> TwoForm:
    if omega1.chart is not None and omega2.chart is not None and omega1.chart != omega2.chart:
        raise ChartMismatch(f"wedge of forms in charts {omega1.chart!r} and {omega2.chart!r}")
    return TwoForm(omega1.a * omega2.b - omega2.a * omega1.b)


def pullback_form(phi: RationalMap2, omega: OneForm) -> OneForm:
    """phi^* omega, cleared of denominators and normalized to a primitive form in phi's source chart."""
    if phi.target is not None and omega.chart is not None and phi.target != omega.chart:
        raise ChartMismatch(f"map lands in {phi.target!r} but the form lives in {omega.chart!r}")
    big_x, big_y = phi.first, phi.second
    a = omega.a.substitute(big_x, big_y)
    b = omega.b.substitute(big_x, big_y)
    new_a = a * big_x.partial("x") + b * big_y.partial("x")
    new_b = a * big_x.partial("y") + b * big_y.partial("y")
    if new_a.is_zero and new_b.is_zero:
        raise IndeterminateForm(f"pullback of {omega} under {phi} vanishes identically")
    lcd = poly_lcm(new_a.den, new_b.den)
    a_poly = new_a.num * lcd.exact_div(new_a.den)
    b_poly = new_b.num * lcd.exact_div(new_b.den)
    return OneForm(a_poly, b_poly, phi.source).primitive()


def translate_form(omega: OneForm, point: Tuple[Number, Number]) -> OneForm:
    """omega pulled back under (x, y) -> (x + p1, y + p2), so that point moves to the origin."""
    p1, p2 = point
    return OneForm(omega.a.translate(p1, p2), omega.b.translate(p1, p2), omega.chart)


def curve_invariant(omega: OneForm, f: Poly2) -> bool:
    """True iff omega ^ df is divisible by f."""
    if f.is_zero:
        raise ValueError("the zero polynomial does not define a curve")
    if f.chart is None:
        f = f.with_chart(omega.chart)
    two = omega.a * f.partial("y") - omega.b * f.partial("x")
    return f.divides(two)
