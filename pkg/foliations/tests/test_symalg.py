import random
from fractions import Fraction

from django.test import SimpleTestCase

from foliations.errors import ChartMismatch, IndeterminateForm, ZeroForm, ZeroInverse
from foliations.exactnum import QuadraticNumber
from foliations.symalg import (
    OneForm,
    Poly2,
    RationalFn2,
    RationalMap2,
    TwoForm,
    compose,
    curve_invariant,
    is_identity,
    poly_gcd,
    poly_lcm,
    pullback_form,
    translate_form,
    wedge,
)

X, Y = Poly2.var("x"), Poly2.var("y")
L = QuadraticNumber(Fraction(1, 2), Fraction(1, 2), -3)
I = QuadraticNumber.sqrt(-1)


def random_poly(rng, degree=2):
    terms = {(i, j): rng.randint(-3, 3) for i in range(degree + 1) for j in range(degree + 1 - i)}
    p = Poly2(terms)
    return p if not p.is_zero else X + 1


def random_form(rng):
    return OneForm(random_poly(rng), random_poly(rng))


def random_map(rng):
    """A birational map of the plane."""
    kind = rng.randrange(5)
    if kind == 0:
        while True:
            a, b, c, d = (rng.randint(-2, 2) for _ in range(4))
            if a * d - b * c:
                break
        return RationalMap2(X * a + Y * b + rng.randint(-2, 2), X * c + Y * d + rng.randint(-2, 2))
    if kind == 1:
        return RationalMap2(X, X * Y)
    if kind == 2:
        return RationalMap2(RationalFn2(1, X), RationalFn2(Y, X))
    if kind == 3:
        return RationalMap2(X, Y + X * X * rng.choice((1, -1, 2)))
    return RationalMap2(RationalFn2(1, X), RationalFn2(1, Y))


class PolynomialTests(SimpleTestCase):
    def test_arithmetic_and_text(self):
        square = (X + Y) ** 2
        self.assertEqual(square.coefficient(1, 1), 2)
        self.assertEqual(str(square), "x^2 + 2*x*y + y^2")
        self.assertEqual(str(X * Fraction(1, 2) - 3), "1/2*x - 3")
        self.assertEqual(square.degree, 2)
        self.assertEqual((X ** 3 * Y + X * Y ** 2).order_in("x"), 1)

    def test_division(self):
        self.assertEqual((X * X - Y * Y).exact_div(X - Y), X + Y)
        quotient, remainder = (X * X + 1).divmod(X)
        self.assertEqual(quotient, X)
        self.assertEqual(remainder, 1)
        with self.assertRaises(ValueError):
            (X * X + 1).exact_div(X)
        with self.assertRaises(ZeroInverse):
            X.divmod(Poly2())

    def test_gcd_and_lcm(self):
        self.assertEqual(poly_gcd(X * X - Y * Y, X * X + 2 * X * Y + Y * Y), X + Y)
        self.assertEqual(poly_gcd(X * X * Y, X * Y * Y + X), X)
        self.assertEqual(poly_gcd(X + 1, Y + 1), 1)
        self.assertEqual(poly_lcm(X, Y), X * Y)

    def test_gcd_over_a_quadratic_field(self):
        i = QuadraticNumber.sqrt(-1)
        p = (X - Y * i) * (X + 1)
        q = (X - Y * i) * (Y + 2)
        self.assertEqual(poly_gcd(p, q), X - Y * i)

    def test_calculus(self):
        p = X ** 2 * Y + 3 * Y
        self.assertEqual(p.partial("x"), 2 * X * Y)
        self.assertEqual(p.partial("y"), X * X + 3)
        self.assertEqual(p.evaluate(2, -1), -7)
        self.assertEqual(p.restrict("y", 0), 0)
        self.assertEqual(p.translate(1, 0), (X + 1) ** 2 * Y + 3 * Y)

    def test_charts_do_not_mix(self):
        with self.assertRaises(ChartMismatch):
            Poly2.var("x", "a") + Poly2.var("y", "b")
        # constants adopt the other chart
        self.assertEqual((Poly2.var("x", "a") + 1).chart, "a")


class RationalTests(SimpleTestCase):
    def test_common_factor_cancels(self):
        f = RationalFn2(X * X - 1, X - 1)
        self.assertTrue(f.is_polynomial)
        self.assertEqual(f.as_poly(), X + 1)

    def test_denominator_is_monic(self):
        f = RationalFn2(X, 2 * Y)
        self.assertEqual(f.den, Y)
        self.assertEqual(f.num, X * Fraction(1, 2))

    def test_zero_denominator(self):
        with self.assertRaises(ZeroInverse):
            RationalFn2(X, Poly2())
        with self.assertRaises(ZeroInverse):
            RationalFn2(X, Y).evaluate(1, 0)

    def test_arithmetic(self):
        f = RationalFn2(1, X) + RationalFn2(1, Y)
        self.assertEqual(f, RationalFn2(X + Y, X * Y))
        self.assertEqual(RationalFn2(X, Y) * RationalFn2(Y, X), 1)
        self.assertEqual(RationalFn2(X, Y).partial("y"), RationalFn2(-X, Y * Y))

    def test_cremona_is_an_involution(self):
        f = RationalMap2(RationalFn2(1, X), RationalFn2(1, Y))
        self.assertTrue(is_identity(compose(f, f)))
        self.assertFalse(f.defined_at(0, 0))

    def test_constant_map_is_refused(self):
        with self.assertRaises(IndeterminateForm):
            RationalMap2(Poly2.constant(1), Poly2.constant(2))

    def test_composition_checks_charts(self):
        into_a = RationalMap2(X, Y, None, "a")
        from_b = RationalMap2(X, Y, "b", "c")
        with self.assertRaises(ChartMismatch):
            from_b.compose(into_a)


class FormTests(SimpleTestCase):
    def test_zero_form(self):
        with self.assertRaises(ZeroForm):
            OneForm(0, 0)

    def test_primitive_normalization(self):
        omega = OneForm(2 * X * Y, 4 * X * X)
        primitive = omega.primitive()
        self.assertEqual(primitive, OneForm(Y * Fraction(-1, 2), -X))
        self.assertEqual(str(primitive), "-1/2*y*dx - x*dy")
        self.assertTrue(primitive.is_primitive())
        self.assertFalse(omega.is_primitive())

    def test_primitive_without_dy_term(self):
        # y dx saturates to dx
        self.assertEqual(OneForm(3 * Y, 0).primitive(), OneForm(1, 0))

    def test_invariant_curves(self):
        omega = OneForm(Y, -X)
        self.assertTrue(curve_invariant(omega, X))
        self.assertTrue(curve_invariant(omega, X + Y))
        self.assertFalse(curve_invariant(omega, X + Y - 1))

    def test_pullback_of_linear_form_under_scaling(self):
        lam = QuadraticNumber(Fraction(1, 2), Fraction(1, 2), -3)
        omega = OneForm(Y * lam, -X)
        scaling = RationalMap2(2 * X, 2 * Y)
        self.assertEqual(pullback_form(scaling, omega), omega.primitive())

    def test_pullback_checks_charts(self):
        with self.assertRaises(ChartMismatch):
            pullback_form(RationalMap2(X, Y, "a", "b"), OneForm(Y, -X, "c"))

    def test_wedge_checks_charts(self):
        with self.assertRaises(ChartMismatch):
            wedge(OneForm(Y, -X, "a"), OneForm(Y, -X, "b"))

    def test_translate(self):
        omega = OneForm(Y - 1, -(X - 2))
        moved = translate_form(omega, (2, 1))
        self.assertEqual(moved, OneForm(Y, -X))

    def test_cremona_pullback_of_linear_form(self):
        cremona = RationalMap2(RationalFn2(1, X), RationalFn2(1, Y))
        for lam in (L, QuadraticNumber(2), I):
            with self.subTest(lam=str(lam)):
                omega = OneForm(Y * lam, -X)
                self.assertEqual(pullback_form(cremona, omega), omega.primitive())

    def test_gamma_pullback_of_linear_form(self):
        gamma = RationalMap2(RationalFn2(1, Y), RationalFn2(X, Y))
        for lam in (QuadraticNumber(2), QuadraticNumber(Fraction(-1, 3)), I, L):
            with self.subTest(lam=str(lam)):
                pulled = pullback_form(gamma, OneForm(Y * lam, -X))
                self.assertEqual(pulled, OneForm(-Y, X * (-lam + 1)).primitive())
        self.assertEqual(pullback_form(gamma, OneForm(Y * 2, -X)), OneForm(-Y, -X))
        # invariant exactly on the roots of lam^2 - lam + 1
        self.assertEqual(pullback_form(gamma, OneForm(Y * L, -X)), OneForm(Y * L, -X))

    def test_beta_wedge_vanishes_only_at_plus_minus_i(self):
        beta = RationalMap2(Y, RationalFn2(1, X))
        for lam, zero in [(I, True), (-I, True), (L, False), (QuadraticNumber(2), False)]:
            with self.subTest(lam=str(lam)):
                omega = OneForm(Y * lam, -X)
                self.assertEqual(wedge(omega, pullback_form(beta, omega)).is_zero, zero)
        omega = OneForm(Y * L, -X)
        self.assertEqual(wedge(omega, pullback_form(beta, omega)), TwoForm(-(X * Y)))



class FormPropertyTests(SimpleTestCase):
    def test_pullback_is_functorial(self):
        rng = random.Random(20260418)
        for _ in range(200):
            phi, psi, omega = random_map(rng), random_map(rng), random_form(rng)
            direct = pullback_form(phi.compose(psi), omega)
            stepwise = pullback_form(psi, pullback_form(phi, omega))
            self.assertTrue(direct.proportional(stepwise), f"{phi} after {psi} on {omega}")
            self.assertEqual(direct, stepwise)

    def test_wedge_is_antisymmetric(self):
        rng = random.Random(7)
        for _ in range(100):
            first, second = random_form(rng), random_form(rng)
            self.assertEqual(wedge(first, second), -wedge(second, first))
            self.assertTrue(wedge(first, first).is_zero)

    def test_normalization_is_idempotent(self):
        rng = random.Random(11)
        for _ in range(100):
            omega = random_form(rng).scale(random_poly(rng, 1))
            once = omega.primitive()
            self.assertEqual(once.primitive(), once)
            self.assertTrue(once.proportional(omega))

    def test_polynomial_multiples_share_a_primitive(self):
        rng = random.Random(29)
        for _ in range(150):
            omega, u = random_form(rng), random_poly(rng, rng.randint(0, 2))
            self.assertEqual(omega.scale(u).primitive(), omega.primitive(), f"{u} times {omega}")
