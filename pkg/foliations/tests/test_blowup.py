import itertools
import random
from fractions import Fraction

import numpy
from django.test import SimpleTestCase

from foliations.blowup import (
    Curve,
    CurveConfig,
    MarkedPoint,
    blow_down_config,
    blow_up_config,
    blow_up_form,
    build_exceptional_chain,
    contractible_curves,
    cycle_config,
    grauert_is_contractible,
    grauert_minors,
    intersection_matrix,
    link_config,
)
from foliations.errors import NotContractible, NotSingular, NotSymmetric, UnknownPoint
from foliations.exactnum import QuadraticNumber
from foliations.localfol import BRANCH_Y0, cs_corner_index
from foliations.symalg import OneForm, Poly2

X, Y = Poly2.var("x"), Poly2.var("y")
L = QuadraticNumber(Fraction(1, 2), Fraction(1, 2), -3)


def negative_definite(matrix):
    return bool(numpy.linalg.eigvalsh(numpy.array(matrix, dtype=float)).max() < -1e-9)


def symmetric(size, entries):
    """Fill the upper triangle row by row from ``entries``."""
    matrix = [[0] * size for _ in range(size)]
    values = iter(entries)
    for i in range(size):
        for j in range(i, size):
            matrix[i][j] = matrix[j][i] = next(values)
    return matrix


class BlowUpFormTests(SimpleTestCase):
    def test_linear_node(self):
        result = blow_up_form(OneForm(Y * L, -X))
        self.assertEqual(result.multiplicity, 1)
        self.assertFalse(result.dicritical)
        self.assertEqual(result.chart1_form, OneForm(Y * (L - 1), -X))
        self.assertEqual(result.chart1_form.chart, "plane/u")
        self.assertEqual(result.exceptional_singularity_count(), 2)
        self.assertTrue(result.gluing_consistent())

    def test_radial_is_dicritical(self):
        result = blow_up_form(OneForm(Y, -X))
        self.assertEqual(result.multiplicity, 1)
        self.assertTrue(result.dicritical)
        self.assertTrue(result.gluing_consistent())

    def test_product_form(self):
        result = blow_up_form(OneForm(Y, X))
        self.assertEqual(result.multiplicity, 1)
        self.assertFalse(result.dicritical)
        self.assertEqual(result.exceptional_singularity_count(), 2)

    def test_higher_order(self):
        result = blow_up_form(OneForm(Y * Y, -X * X))
        self.assertEqual(result.multiplicity, 2)
        self.assertFalse(result.dicritical)

    def test_chart_names_follow_the_form(self):
        result = blow_up_form(OneForm(Y * L, -X, "3"))
        self.assertEqual((result.chart1_form.chart, result.chart2_form.chart), ("3/u", "3/s"))

    def test_regular_point(self):
        with self.assertRaises(NotSingular):
            blow_up_form(OneForm(1, 0))
        result = blow_up_form(OneForm(1, 0), allow_regular=True)
        self.assertTrue(result.regular_center)
        self.assertEqual(result.multiplicity, 0)
        self.assertFalse(result.dicritical)
        self.assertEqual(result.exceptional_singularity_count(), 1)
        self.assertEqual(cs_corner_index(result.chart2_form, (0, 0), BRANCH_Y0), -1)


class CurveConfigTests(SimpleTestCase):
    def test_duplicate_ids(self):
        with self.assertRaises(ValueError):
            CurveConfig((Curve("A", 1), Curve("A", 2)))

    def test_cycles(self):
        triangle = cycle_config(3, -1)
        self.assertTrue(triangle.is_cycle(["C1", "C2", "C3"]))
        self.assertFalse(triangle.is_cycle(["C1", "C2"]))
        self.assertTrue(cycle_config(2, 0).is_cycle(["C1", "C2"]))
        self.assertFalse(link_config(5).is_cycle(["C"]))
        with self.assertRaises(ValueError):
            cycle_config(1, 0)

    def test_intersection_matrix(self):
        self.assertEqual(intersection_matrix(cycle_config(3, -1)), [[-1, 1, 1], [1, -1, 1], [1, 1, -1]])
        self.assertEqual(intersection_matrix(cycle_config(2, 0)), [[0, 2], [2, 0]])
        self.assertEqual(intersection_matrix(link_config(5)), [[5]])

    def test_node_defect(self):
        self.assertEqual(link_config(5).camacho_sad_defects(), {"C": (5, 5)})
        self.assertEqual(cycle_config(4, 0).camacho_sad_defects(), {})

    def test_text_round_trip(self):
        config = blow_up_config(link_config(5), "p")
        text = config.to_text()
        self.assertIn("curve E1 self=-1 rational=1 origin=p", text)
        again = CurveConfig.from_text(text)
        self.assertEqual(again, config)
        self.assertEqual(again.config_hash(), config.config_hash())

    def test_text_comments_and_generated_points(self):
        config = CurveConfig.from_text("# two lines\ncurve A self=1\ncurve B self=1\ncross A B\n\n")
        self.assertEqual(config.crossings[0].point, "q1")
        self.assertIsNone(config.crossings[0].lam)

    def test_unreadable_text(self):
        with self.assertRaisesMessage(ValueError, "line 2"):
            CurveConfig.from_text("curve A self=1\nsurface A\n")


class SurgeryTests(SimpleTestCase):
    def test_node_blow_up(self):
        config = blow_up_config(link_config(5), "p")
        self.assertEqual(config.curve("C").self_intersection, 1)
        self.assertEqual(config.curve("E1").self_intersection, -1)
        self.assertFalse(config.has_node("C"))
        self.assertEqual(len(config.crossings_of("E1")), 2)
        self.assertEqual(contractible_curves(config), ["E1"])

    def test_camacho_sad_survives_blow_ups(self):
        for n in (1, 2, 3, 5, 7):
            config = blow_up_config(link_config(n), "p")
            config = blow_up_config(config, "p.1")
            for curve_id, (total, self_intersection) in config.camacho_sad_defects().items():
                with self.subTest(n=n, curve=curve_id):
                    self.assertEqual(total, self_intersection)

    def test_regular_marked_point(self):
        base = CurveConfig((Curve("A", 2),), (), (MarkedPoint("A", "m", True),))
        config = blow_up_config(base, "m")
        self.assertEqual(config.curve("A").self_intersection, 1)
        self.assertEqual(config.crossings[0].index_on("A"), -1)
        self.assertEqual(blow_down_config(config, "E1"), base)

    def test_unknown_point(self):
        with self.assertRaises(UnknownPoint):
            blow_up_config(link_config(5), "nowhere")

    def test_not_contractible(self):
        with self.assertRaises(NotContractible):
            blow_down_config(link_config(5), "C")
        with self.assertRaises(NotContractible):
            blow_down_config(link_config(-1, annotate=False), "C")
        with self.assertRaises(NotContractible):
            blow_down_config(CurveConfig((Curve("A", -1, is_rational=False),)), "A")

    def test_random_round_trips(self):
        for seed in range(120):
            rng = random.Random(seed)
            kind = rng.randrange(3)
            if kind == 0:
                base = cycle_config(rng.randint(2, 4), rng.randint(-2, 2))
            elif kind == 1:
                base = link_config(rng.choice([1, 2, 3, 5, 6]))
            else:
                cycle = cycle_config(rng.randint(2, 4), rng.randint(-2, 2))
                base = CurveConfig(cycle.curves, cycle.crossings, (MarkedPoint("C1", "m", rng.random() < 0.5),))
            history = [base]
            config = base
            for _ in range(rng.randint(1, 3)):
                config = blow_up_config(config, rng.choice(config.point_ids()))
                history.append(config)
            with self.subTest(seed=seed):
                while len(history) > 1:
                    newest = history.pop()
                    config = blow_down_config(newest, newest.curves[-1].id)
                    self.assertEqual(config, history[-1])


class GrauertTests(SimpleTestCase):
    def test_examples(self):
        self.assertTrue(grauert_is_contractible([[-1]]))
        self.assertFalse(grauert_is_contractible([[0]]))
        self.assertEqual(grauert_minors([[-1, 1], [1, -2]]), [-1, 1])
        self.assertFalse(grauert_is_contractible([[-1, 1, 1], [1, -1, 1], [1, 1, -1]]))

    def test_not_symmetric(self):
        with self.assertRaises(NotSymmetric):
            grauert_minors([[1, 2], [3, 4]])
        with self.assertRaises(NotSymmetric):
            grauert_minors([[1, 2], [2]])

    def test_small_matrices_against_eigenvalues(self):
        for size in (1, 2):
            for entries in itertools.product(range(-3, 4), repeat=size * (size + 1) // 2):
                matrix = symmetric(size, entries)
                self.assertEqual(grauert_is_contractible(matrix), negative_definite(matrix), matrix)

    def test_size_three_against_eigenvalues(self):
        # a positive diagonal entry rules out definiteness, so only negative diagonals are enumerated
        for diagonal in itertools.product(range(-3, 0), repeat=3):
            for off in itertools.product(range(-3, 4), repeat=3):
                matrix = [
                    [diagonal[0], off[0], off[1]],
                    [off[0], diagonal[1], off[2]],
                    [off[1], off[2], diagonal[2]],
                ]
                self.assertEqual(grauert_is_contractible(matrix), negative_definite(matrix), matrix)

    def test_non_negative_diagonal_is_never_contractible(self):
        rng = random.Random(3)
        for _ in range(200):
            size = rng.randint(1, 3)
            matrix = symmetric(size, [rng.randint(-3, 3) for _ in range(size * (size + 1) // 2)])
            index = rng.randrange(size)
            matrix[index][index] = rng.randint(0, 3)
            self.assertFalse(grauert_is_contractible(matrix), matrix)

    def test_size_four_against_eigenvalues(self):
        rng = random.Random(4)
        for _ in range(500):
            matrix = symmetric(4, [rng.randint(-3, 3) for _ in range(10)])
            if rng.random() < 0.5:
                for i in range(4):
                    matrix[i][i] = rng.randint(-3, -1)
            self.assertEqual(grauert_is_contractible(matrix), negative_definite(matrix), matrix)


class ExceptionalChainTests(SimpleTestCase):
    def test_chain_over_link_node(self):
        for n in range(5, 11):
            with self.subTest(n=n):
                chain = build_exceptional_chain(n)
                self.assertEqual(len(chain.exceptional), n - 3)
                self.assertEqual(chain.self_intersections[0], n - 4)
                self.assertEqual(chain.self_intersections[-1], 0)
                self.assertEqual(chain.config.curve(chain.strict_transform).self_intersection, 0)
                matrix = chain.matrix()
                self.assertEqual([matrix[i][i] for i in range(n - 3)], [-1] + [-2] * (n - 4))
                self.assertTrue(grauert_is_contractible(matrix))
                self.assertEqual(grauert_minors(matrix), [(-1) ** k for k in range(1, n - 2)])

    def test_every_choice_sequence(self):
        n = 7
        for choices in itertools.product((0, 1), repeat=n - 4):
            with self.subTest(choices=choices):
                chain = build_exceptional_chain(n, choices)
                self.assertEqual(list(chain.self_intersections), [n - 3 - k for k in range(1, n - 2)])
                self.assertTrue(grauert_is_contractible(chain.matrix()))
        with self.assertRaises(ValueError):
            build_exceptional_chain(n, [2])

    def test_smallest_chain(self):
        chain = build_exceptional_chain(5)
        self.assertEqual(chain.matrix(), [[-1, 1], [1, -2]])
        self.assertEqual(chain.points, ("p", "p.1"))

    def test_needs_a_large_link(self):
        with self.assertRaises(ValueError):
            build_exceptional_chain(4)
