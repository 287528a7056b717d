"""
Exact numbers: rationals and elements a + b*sqrt(d) of one quadratic field.

Rationals are plain ``fractions.Fraction`` values; ``QuadraticNumber`` carries
its squarefree ``d`` and refuses to mix two different fields unless one side
is a pure rational. Conversions to and from sympy's algebraic domains live
here too, since the polynomial gcd and root finding are delegated to sympy.
"""
import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import lcm
from typing import Any, Optional, Tuple, Union

import sympy
from sympy import QQ

from .errors import FieldMismatch, ZeroInverse

logger = logging.getLogger(__name__)

Rational = Fraction
Number = Union[int, Fraction, "QuadraticNumber"]

ROOT_OF_UNITY_BOUND = 12


@lru_cache(maxsize=None)
def squarefree_decomposition(n: int) -> Tuple[int, int]:
    """Return (s, core) with n = s**2 * core and core squarefree (sign kept in core)."""
    if n == 0:
        return 0, 0
    s, core = 1, (1 if n > 0 else -1)
    for prime, exponent in sympy.factorint(abs(n)).items():
        s *= prime ** (exponent // 2)
        if exponent % 2:
            core *= prime
    return s, core


def _rational_root(value: Fraction, n: int) -> Optional[Fraction]:
    if value == 0:
        return Fraction(0)
    sign = 1
    if value < 0:
        if n % 2 == 0:
            return None
        sign, value = -1, -value
    num, num_exact = sympy.integer_nthroot(value.numerator, n)
    den, den_exact = sympy.integer_nthroot(value.denominator, n)
    if not (num_exact and den_exact):
        return None
    return sign * Fraction(int(num), int(den))


@dataclass(frozen=True, eq=False)
class QuadraticNumber:
    """a + b*sqrt(d) with a, b rational and d squarefree (d is ignored when b == 0)."""

    a: Fraction
    b: Fraction = Fraction(0)
    d: int = -1

    def __post_init__(self):
        a, b, d = Fraction(self.a), Fraction(self.b), int(self.d)
        if d == 0:
            raise FieldMismatch("d must be a nonzero squarefree integer")
        s, core = squarefree_decomposition(d)
        if core == 1:
            a, b, core = a + b * s, Fraction(0), -1
        else:
            b *= s
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "d", core)

    # -- construction helpers -------------------------------------------

    @classmethod
    def coerce(cls, value: Any) -> "QuadraticNumber":
        if isinstance(value, QuadraticNumber):
            return value
        if isinstance(value, (int, Fraction)):
            return cls(Fraction(value))
        raise TypeError(f"cannot use {type(value).__name__} as an exact number")

    @classmethod
    def sqrt(cls, d: int) -> "QuadraticNumber":
        return cls(Fraction(0), Fraction(1), d)

    # -- predicates -------------------------------------------------------

    @property
    def is_rational(self) -> bool:
        return self.b == 0

    @property
    def is_positive_rational(self) -> bool:
        return self.b == 0 and self.a > 0

    @property
    def field(self) -> Optional[int]:
        return None if self.b == 0 else self.d

    def __bool__(self) -> bool:
        return bool(self.a) or bool(self.b)

    # -- arithmetic --------------------------------------------------------

    def _common_d(self, other: "QuadraticNumber") -> int:
        if not other.b:
            return self.d
        if not self.b:
            return other.d
        if self.d != other.d:
            raise FieldMismatch(f"cannot combine sqrt({self.d}) with sqrt({other.d})")
        return self.d

    def __add__(self, other):
        try:
            other = QuadraticNumber.coerce(other)
        except TypeError:
            return NotImplemented
        d = self._common_d(other)
        return QuadraticNumber(self.a + other.a, self.b + other.b, d)

    __radd__ = __add__

    def __neg__(self):
        return QuadraticNumber(-self.a, -self.b, self.d)

    def __sub__(self, other):
        try:
            other = QuadraticNumber.coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        try:
            other = QuadraticNumber.coerce(other)
        except TypeError:
            return NotImplemented
        d = self._common_d(other)
        return QuadraticNumber(
            self.a * other.a + d * self.b * other.b,
            self.a * other.b + self.b * other.a,
            d,
        )

    __rmul__ = __mul__

    def norm(self) -> Fraction:
        return self.a * self.a - self.d * self.b * self.b

    def conjugate(self) -> "QuadraticNumber":
        return QuadraticNumber(self.a, -self.b, self.d)

    def inverse(self) -> "QuadraticNumber":
        n = self.norm()
        if n == 0:
            raise ZeroInverse("zero has no multiplicative inverse")
        return QuadraticNumber(self.a / n, -self.b / n, self.d)

    def __truediv__(self, other):
        try:
            other = QuadraticNumber.coerce(other)
        except TypeError:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        return QuadraticNumber.coerce(other) * self.inverse()

    def __pow__(self, exponent: int):
        if not isinstance(exponent, int):
            return NotImplemented
        base = self if exponent >= 0 else self.inverse()
        result = QuadraticNumber(Fraction(1), Fraction(0), self.d)
        for _ in range(abs(exponent)):
            result = result * base
        return result

    # -- comparison --------------------------------------------------------

    def __eq__(self, other):
        try:
            other = QuadraticNumber.coerce(other)
        except TypeError:
            return NotImplemented
        if self.a != other.a or self.b != other.b:
            return False
        return self.b == 0 or self.d == other.d

    def __hash__(self):
        if self.b == 0:
            return hash(self.a)
        return hash((self.a, self.b, self.d))

    # -- text ----------------------------------------------------------------

    def __str__(self) -> str:
        if not self.b:
            return str(self.a)
        c = lcm(self.a.denominator, self.b.denominator)
        big_a, big_b = int(self.a * c), int(self.b * c)
        root = f"sqrt({self.d})"
        radical = root if abs(big_b) == 1 else f"{abs(big_b)}*{root}"
        if big_a:
            inner = f"{big_a}{'+' if big_b > 0 else '-'}{radical}"
        else:
            inner = radical if big_b > 0 else f"-{radical}"
        if c == 1:
            return f"({inner})" if big_a else inner
        return f"({inner})/{c}"

    def __repr__(self) -> str:
        return f"QuadraticNumber({self})"

    def reads_negative(self) -> bool:
        """True when the printed form starts with a minus sign."""
        return str(self).startswith("-")


# ---------------------------------------------------------------------------
# Functional API
# ---------------------------------------------------------------------------

def qn_add(x: Number, y: Number) -> QuadraticNumber:
    return QuadraticNumber.coerce(x) + y


def qn_mul(x: Number, y: Number) -> QuadraticNumber:
    return QuadraticNumber.coerce(x) * y


def qn_neg(x: Number) -> QuadraticNumber:
    return -QuadraticNumber.coerce(x)


def qn_inv(x: Number) -> QuadraticNumber:
    return QuadraticNumber.coerce(x).inverse()


def qn_norm(x: Number) -> Fraction:
    return QuadraticNumber.coerce(x).norm()


def root_of_unity_order(x: Number, bound: int = ROOT_OF_UNITY_BOUND) -> Optional[int]:
    """Smallest k <= bound with x**k == 1, else None."""
    x = QuadraticNumber.coerce(x)
    power = x
    for k in range(1, bound + 1):
        if power == 1:
            return k
        power = power * x
    return None


def solve_monic_quadratic(p: Union[int, Fraction], q: Union[int, Fraction]) -> Tuple[QuadraticNumber, QuadraticNumber]:
    """Both roots of t^2 + p t + q, the '+' root first."""
    p, q = Fraction(p), Fraction(q)
    disc = p * p - 4 * q
    half = -p / 2
    if disc == 0:
        root = QuadraticNumber(half)
        return root, root
    s, core = squarefree_decomposition(disc.numerator * disc.denominator)
    shift = Fraction(s, disc.denominator) / 2
    if core == 1:
        return QuadraticNumber(half + shift), QuadraticNumber(half - shift)
    return QuadraticNumber(half, shift, core), QuadraticNumber(half, -shift, core)


def qn_sqrt(x: Number) -> Optional[QuadraticNumber]:
    """A square root of x inside its own field, or None."""
    x = QuadraticNumber.coerce(x)
    if not x:
        return QuadraticNumber(Fraction(0))
    if x.is_rational:
        root = _rational_root(x.a, 2)
        if root is not None:
            return QuadraticNumber(root)
        root = _rational_root(x.a / x.d, 2)
        if root is not None:
            return QuadraticNumber(Fraction(0), root, x.d)
        return None
    big_n = _rational_root(x.norm(), 2)
    if big_n is None:
        return None
    for candidate in ((x.a + big_n) / 2, (x.a - big_n) / 2):
        p = _rational_root(candidate, 2)
        if not p:
            continue
        root = QuadraticNumber(p, x.b / (2 * p), x.d)
        if root * root == x:
            return root
    return None


def nth_root_in_field(x: Number, n: int, d: Optional[int] = None) -> Optional[QuadraticNumber]:
    """An n-th root of x in Q(sqrt(d)) (d defaults to the field of x), rational roots preferred."""
    x = QuadraticNumber.coerce(x)
    if x.is_rational:
        root = _rational_root(x.a, n)
        if root is not None:
            return QuadraticNumber(root)
    field = x.field if d is None else d
    if field is None:
        return None
    t = sympy.Symbol("t")
    domain = sympy_domain(field)
    roots = sympy.Poly(t ** n - to_sympy(x), t, domain=domain).ground_roots()
    found = sorted((from_sympy(root, field) for root in roots), key=str)
    logger.debug("ground roots of t^%s - (%s): %s", n, x, found)
    return found[0] if found else None


# ---------------------------------------------------------------------------
# sympy bridge
# ---------------------------------------------------------------------------

@lru_cache(maxsize=None)
def sympy_domain(d: Optional[int]):
    if d is None:
        return QQ
    return QQ.algebraic_field(sympy.sqrt(d))


def _to_fraction(value) -> Fraction:
    return Fraction(int(value.numerator), int(value.denominator))


def to_sympy(x: Number):
    x = QuadraticNumber.coerce(x)
    expr = sympy.Rational(x.a.numerator, x.a.denominator)
    if x.b:
        expr += sympy.Rational(x.b.numerator, x.b.denominator) * sympy.sqrt(x.d)
    return expr


@lru_cache(maxsize=None)
def _sqrt_element(d: int):
    return sympy_domain(d).from_sympy(sympy.sqrt(d))


@lru_cache(maxsize=None)
def _generator_coordinates(d: int) -> Tuple[Fraction, Fraction]:
    # sqrt(d) = p*theta + q in terms of the domain's primitive element theta
    coeffs = [_to_fraction(c) for c in _sqrt_element(d).to_list()]
    coeffs = [Fraction(0)] * (2 - len(coeffs)) + coeffs
    return coeffs[0], coeffs[1]


def to_domain_element(x: Number, d: Optional[int]):
    """The sympy ground-domain element for x in QQ (d None) or QQ<sqrt(d)>."""
    x = QuadraticNumber.coerce(x)
    domain = sympy_domain(d)
    element = domain.from_sympy(sympy.Rational(x.a.numerator, x.a.denominator))
    if x.b:
        if d != x.d:
            raise FieldMismatch(f"sqrt({x.d}) does not live in the domain of sqrt({d})")
        element += domain.from_sympy(sympy.Rational(x.b.numerator, x.b.denominator)) * _sqrt_element(d)
    return element


def from_domain_element(element, d: Optional[int]) -> QuadraticNumber:
    """Convert a sympy ground-domain element (QQ or QQ<sqrt(d)>) to a QuadraticNumber."""
    if d is None:
        return QuadraticNumber(_to_fraction(element))
    coeffs = [_to_fraction(c) for c in element.to_list()]
    coeffs = [Fraction(0)] * (2 - len(coeffs)) + coeffs
    t, c = coeffs
    p, q = _generator_coordinates(d)
    return QuadraticNumber(c - t * q / p, t / p, d)


def from_sympy(expr, d: Optional[int]) -> QuadraticNumber:
    return from_domain_element(sympy_domain(d).from_sympy(sympy.sympify(expr)), d)
