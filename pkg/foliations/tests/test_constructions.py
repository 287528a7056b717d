import random
from fractions import Fraction

from django.test import SimpleTestCase

from foliations.constructions import (
    EXPECTED_CONDITIONS,
    GAMMA_MATRIX,
    automorphism_order,
    build_alpha,
    build_L,
    build_M,
    build_model,
    build_N,
    contract_alternate,
    conjugate_to_beta,
    conjugate_to_gamma,
    curve_permutation,
    invariance_condition,
    mat_mul,
    model_document,
    proportional_matrices,
    sign_swap_conjugates,
    verify_model,
)
from foliations.errors import FieldMismatch, WrongShape
from foliations.exactnum import QuadraticNumber
from foliations.surfaces import BlowupTower, ProjectivePlane
from foliations.symalg import Poly2, RationalFn2, RationalMap2

X, Y = Poly2.var("x"), Poly2.var("y")
I = QuadraticNumber.sqrt(-1)


def as_numbers(rows):
    return [[QuadraticNumber.coerce(v) for v in row] for row in rows]


def cyclic_matrix(x, y, z):
    return as_numbers([[0, 0, z], [x, 0, 0], [0, y, 0]])


class ModelTests(SimpleTestCase):
    def test_every_model_verifies(self):
        for key in ("f1", "f2", "f3"):
            for sign in (1, -1):
                with self.subTest(model=key, sign=sign):
                    report = verify_model(build_model(key, sign))
                    failed = [c.id for c in report.claims if not c.passed]
                    self.assertEqual(failed, [])

    def test_claims_of_L(self):
        report = verify_model(build_L())
        ids = [c.id for c in report.claims]
        self.assertEqual(ids[:8], ["cycle-shape", "chart-overlap", "cycle-invariance", "corner-singularities",
                                   "singular-locus", "camacho-sad", "invariance-condition", "sign-swap"])
        for claim_id in ("gamma-invariance", "gamma-order", "gamma-regular", "gamma-permutation",
                         "f-invariance", "f-order", "f-indeterminacy"):
            self.assertIn(claim_id, ids)
        self.assertNotIn("f-regular", ids)
        self.assertEqual(report.claim("gamma-order").evidence["order"], "3")
        with self.assertRaises(KeyError):
            report.claim("beta-order")

    def test_claims_of_N(self):
        report = verify_model(build_N())
        ids = [c.id for c in report.claims]
        for claim_id in ("alpha-order", "alpha-permutation", "f~-regular", "f~-permutation",
                         "contraction-1", "contraction-2"):
            self.assertIn(claim_id, ids)
        self.assertNotIn("sign-swap", ids)
        self.assertEqual(report.claim("alpha-order").evidence["order"], "6")

    def test_lambdas(self):
        self.assertEqual(build_L(1).lam, QuadraticNumber(Fraction(1, 2), Fraction(1, 2), -3))
        self.assertEqual(build_L(-1).lam, QuadraticNumber(Fraction(1, 2), Fraction(-1, 2), -3))
        self.assertEqual(build_M(1).lam, I)
        self.assertEqual(build_M(-1).lam, -I)

    def test_bad_arguments(self):
        with self.assertRaises(ValueError):
            build_L(0)
        with self.assertRaises(ValueError):
            build_model("f4")

    def test_cycle_self_intersections(self):
        for model, expected in [(build_L(), 1), (build_M(), 0), (build_N(), -1)]:
            with self.subTest(model=model.name):
                values = {c.self_intersection for c in model.cycle.curves}
                self.assertEqual(values, {expected})
                self.assertTrue(model.cycle.is_cycle(list(model.order)))

    def test_document(self):
        document = model_document(build_M())
        self.assertEqual(document["name"], "M+")
        self.assertEqual(document["lambda"], "sqrt(-1)")
        self.assertEqual(sorted(document["forms"]), ["00", "01", "10", "11"])
        self.assertIn("beta", document["automorphisms"])


class AutomorphismTests(SimpleTestCase):
    def test_orders(self):
        model = build_L()
        orders = {phi.name: automorphism_order(phi.base) for phi in model.automorphisms}
        self.assertEqual(orders, {"gamma": 3, "f": 2})
        self.assertEqual(automorphism_order(build_M().automorphisms[0].base), 4)
        self.assertEqual(automorphism_order(build_alpha(BlowupTower(ProjectivePlane(), ("3", "1", "2"))).base), 6)

    def test_order_bound(self):
        self.assertIsNone(automorphism_order(build_alpha(BlowupTower(ProjectivePlane(), ())).base, bound=5))

    def test_gamma_rotates_the_triangle(self):
        model = build_L()
        gamma = model.automorphisms[0]
        images = curve_permutation(model, gamma)
        self.assertEqual(sorted(found[0] for found in images.values()), ["C1", "C2", "C3"])
        self.assertTrue(all(len(found) == 1 for found in images.values()))

    def test_sign_swap(self):
        self.assertTrue(sign_swap_conjugates("L"))
        self.assertTrue(sign_swap_conjugates("M"))

    def test_invariance_conditions(self):
        for kind in ("gamma", "beta"):
            with self.subTest(kind=kind):
                self.assertTrue(invariance_condition(kind).matches(EXPECTED_CONDITIONS[kind]))
        self.assertFalse(invariance_condition("gamma").matches(EXPECTED_CONDITIONS["beta"]))
        with self.assertRaises(ValueError):
            invariance_condition("delta")

    def test_alternate_contractions(self):
        model = build_N()
        for start, contracted in [(1, ["C1", "C3", "C5"]), (2, ["C2", "C4", "C6"])]:
            with self.subTest(start=start):
                config, done = contract_alternate(model, start)
                self.assertEqual(done, contracted)
                self.assertEqual([c.self_intersection for c in config.curves], [1, 1, 1])
                self.assertTrue(config.is_cycle(config.ids))


class ConjugateToGammaTests(SimpleTestCase):
    def assert_conjugates(self, j):
        a = conjugate_to_gamma(j)
        off_diagonal = [a[i][k] for i in range(3) for k in range(3) if i != k]
        self.assertTrue(all(v == 0 for v in off_diagonal))
        self.assertTrue(proportional_matrices(mat_mul(a, j), mat_mul(as_numbers(GAMMA_MATRIX), a)))

    def test_random_rational(self):
        rng = random.Random(7)
        values = [Fraction(p, q) for p in range(-5, 6) if p for q in (1, 2, 3)]
        for _ in range(60):
            x, y, kappa = (rng.choice(values) for _ in range(3))
            with self.subTest(x=x, y=y, kappa=kappa):
                self.assert_conjugates(cyclic_matrix(x, y, kappa ** 3 / (x * y)))

    def test_gaussian_entries(self):
        kappa = 1 + I
        self.assert_conjugates(cyclic_matrix(I, 1, kappa ** 3 / I))

    def test_no_cube_root(self):
        with self.assertRaises(FieldMismatch):
            conjugate_to_gamma(cyclic_matrix(1, 1, 2))

    def test_wrong_shape(self):
        with self.assertRaises(WrongShape):
            conjugate_to_gamma(as_numbers([[1, 0, 0], [0, 1, 0], [0, 0, 1]]))
        with self.assertRaises(WrongShape):
            conjugate_to_gamma(as_numbers([[0, 1], [1, 0]]))


class ConjugateToBetaTests(SimpleTestCase):
    def assert_conjugates(self, j):
        g = conjugate_to_beta(j)
        p = g.first.as_poly().coefficient(1, 0)
        q = g.second.as_poly().coefficient(0, 1)
        g_inverse = RationalMap2(X.scale(p.inverse()), Y.scale(q.inverse()))
        conjugated = g.compose(j.compose(g_inverse))
        self.assertEqual(conjugated.first, Y)
        self.assertEqual(conjugated.second, RationalFn2(1, X))

    def test_rational(self):
        self.assert_conjugates(RationalMap2(Y * 2, RationalFn2(8, X)))
        self.assert_conjugates(RationalMap2(Y * Fraction(1, 3), RationalFn2(3, X)))

    def test_gaussian(self):
        self.assert_conjugates(RationalMap2(Y * I, RationalFn2(Poly2.constant(I), X)))

    def test_not_a_square(self):
        with self.assertRaises(FieldMismatch):
            conjugate_to_beta(RationalMap2(Y, RationalFn2(2, X)))
        with self.assertRaises(FieldMismatch):
            conjugate_to_beta(RationalMap2(Y, RationalFn2(-1, X)))

    def test_wrong_shape(self):
        with self.assertRaises(WrongShape):
            conjugate_to_beta(RationalMap2(X, RationalFn2(1, X)))
        with self.assertRaises(WrongShape):
            conjugate_to_beta(RationalMap2(Y, X))
