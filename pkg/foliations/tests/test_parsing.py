from fractions import Fraction

from django.test import SimpleTestCase

from foliations.errors import FormSyntaxError, ZeroForm
from foliations.exactnum import QuadraticNumber
from foliations.parsing import parse_form, parse_matrix, parse_number, parse_point, parse_poly, tokenize
from foliations.symalg import OneForm, Poly2

X, Y = Poly2.var("x"), Poly2.var("y")
L = QuadraticNumber(Fraction(1, 2), Fraction(1, 2), -3)


class TokenizeTests(SimpleTestCase):
    def test_positions(self):
        tokens = tokenize("x^2 + dy")
        self.assertEqual([t.text for t in tokens], ["x", "^", "2", "+", "dy", ""])
        self.assertEqual([t.position for t in tokens], [0, 1, 2, 4, 6, 8])
        self.assertEqual(tokens[-1].kind, "end")

    def test_bad_character(self):
        with self.assertRaises(FormSyntaxError) as caught:
            tokenize("x @ y")
        self.assertEqual(caught.exception.position, 2)


class PolynomialParsingTests(SimpleTestCase):
    def test_expanded_square(self):
        self.assertEqual(parse_poly("x^2 + 2*x*y + y^2"), (X + Y) ** 2)
        self.assertEqual(parse_poly("(x + y)^2"), (X + Y) ** 2)

    def test_division_by_constant(self):
        half = Fraction(1, 2)
        self.assertEqual(parse_poly("(x+1)/2"), X * half + half)
        self.assertEqual(parse_poly("2^-1*x"), X * half)

    def test_unary_minus(self):
        self.assertEqual(parse_poly("-x - -y"), Y - X)

    def test_chart_is_attached(self):
        self.assertEqual(parse_poly("x*y", chart="3").chart, "3")

    def test_errors_carry_position(self):
        cases = [
            ("x/y", 1),
            ("1/0", 1),
            ("2x", 1),
            ("(x+1", 4),
            ("z + 1", 0),
            ("x^y", 2),
        ]
        for text, position in cases:
            with self.subTest(text=text):
                with self.assertRaises(FormSyntaxError) as caught:
                    parse_poly(text)
                self.assertEqual(caught.exception.position, position)

    def test_differential_is_not_a_polynomial(self):
        with self.assertRaises(FormSyntaxError):
            parse_poly("x*dx")


class FormParsingTests(SimpleTestCase):
    def test_named_constant(self):
        omega = parse_form("L*y*dx - x*dy", constants={"L": L})
        self.assertEqual(omega, OneForm(Y * L, -X))

    def test_coefficients_kept_as_written(self):
        omega = parse_form("2*x*dx + 4*x^2*dy")
        self.assertEqual(omega.a, 2 * X)
        self.assertEqual(omega.b, 4 * X * X)

    def test_distributes_over_parentheses(self):
        self.assertEqual(parse_form("(x + y)*(dx - dy)"), OneForm(X + Y, -(X + Y)))
        self.assertEqual(parse_form("dx"), OneForm(1, 0))

    def test_printed_form_reads_back(self):
        i = QuadraticNumber.sqrt(-1)
        forms = [
            OneForm(Y * L, -X),
            OneForm(X * X - 1, Y * i * 2),
            OneForm(Y * Fraction(-1, 2), X + Y),
        ]
        for omega in forms:
            with self.subTest(omega=str(omega)):
                self.assertEqual(parse_form(str(omega)), omega)

    def test_zero_form(self):
        with self.assertRaises(ZeroForm):
            parse_form("0*dx + x*dy - x*dy")

    def test_rejects_non_forms(self):
        for text in ["x", "x*dx + 1", "dx*dy", "dx^2", "dx/x"]:
            with self.subTest(text=text):
                with self.assertRaises(FormSyntaxError):
                    parse_form(text)

    def test_reserved_constant_name(self):
        with self.assertRaises(ValueError):
            parse_form("x*dy", constants={"x": QuadraticNumber(1)})

    def test_chart(self):
        omega = parse_form("y*dx", chart="00")
        self.assertEqual(omega.chart, "00")
        self.assertEqual(omega.a.chart, "00")


class NumberParsingTests(SimpleTestCase):
    def test_numbers(self):
        self.assertEqual(parse_number("sqrt(-3)"), QuadraticNumber.sqrt(-3))
        self.assertEqual(parse_number("(1+sqrt(-3))/2"), L)
        self.assertEqual(parse_number("sqrt(4)"), 2)
        self.assertEqual(parse_number("-7/3"), Fraction(-7, 3))

    def test_not_a_number(self):
        with self.assertRaises(FormSyntaxError):
            parse_number("x + 1")

    def test_point(self):
        self.assertEqual(parse_point("1, -2"), (1, -2))
        self.assertEqual(parse_point("0,i", constants={"i": QuadraticNumber.sqrt(-1)}), (0, QuadraticNumber.sqrt(-1)))
        with self.assertRaises(FormSyntaxError):
            parse_point("1")

    def test_matrix(self):
        self.assertEqual(parse_matrix("[-1,1;1,-2]"), [[-1, 1], [1, -2]])
        self.assertEqual(parse_matrix("[ -1 ]"), [[-1]])

    def test_ragged_matrix(self):
        with self.assertRaises(FormSyntaxError) as caught:
            parse_matrix("[1,2;3]")
        self.assertEqual(caught.exception.position, 6)
