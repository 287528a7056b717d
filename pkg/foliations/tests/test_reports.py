from django.test import SimpleTestCase

from foliations.errors import FormSyntaxError, NotSymmetric
from foliations.reports import (
    Report,
    blowup_report,
    classify_lambda_report,
    cycle_feasible_report,
    enumerate_report,
    grauert_report,
    links_report,
    verify_report,
)


class ReportRenderingTests(SimpleTestCase):
    def test_json_round_trip(self):
        report = verify_report("f3").stamp(deterministic=True)
        again = Report.from_json(report.to_json())
        self.assertEqual(again.as_dict(), report.as_dict())
        self.assertEqual(again.exit_status, 0)

    def test_inconsistent_exit_status(self):
        text = classify_lambda_report(1).to_json().replace('"exit_status": 0', '"exit_status": 1')
        with self.assertRaises(ValueError):
            Report.from_json(text)

    def test_deterministic_output(self):
        first = classify_lambda_report(5).stamp(True).to_json()
        second = classify_lambda_report(5).stamp(True).to_json()
        self.assertEqual(first, second)
        self.assertIn('"timestamp": null', first)
        self.assertIsNotNone(classify_lambda_report(5).stamp(False).timestamp)

    def test_text(self):
        text = classify_lambda_report(2).stamp(True).to_text()
        self.assertTrue(text.startswith("command: classify_lambda 2\n"))
        self.assertIn("[PASS] lambda-roots", text)
        self.assertIn("    order of -lambda: 4", text)
        self.assertTrue(text.endswith("1/1 claims pass; exit status 0\n"))

    def test_markdown(self):
        report = classify_lambda_report(3)
        markdown = report.render("md")
        self.assertTrue(markdown.startswith("# `classify_lambda 3`"))
        self.assertIn("| lambda-roots |", markdown)
        self.assertEqual(report.render("text"), report.to_text())


class ReportBuilderTests(SimpleTestCase):
    def test_verify(self):
        report = verify_report("f2", -1)
        self.assertEqual(report.command, "verify f2 --sign -1")
        self.assertEqual(report.details["model"]["name"], "M-")
        self.assertEqual(report.exit_status, 0)

    def test_unknown_model(self):
        with self.assertRaises(ValueError):
            verify_report("f7")

    def test_failing_order_bound(self):
        report = verify_report("f1", order_bound=4)
        self.assertEqual(report.exit_status, 1)
        self.assertFalse(report.claims[[c.id for c in report.claims].index("alpha-order")].passed)

    def test_classify_lambda(self):
        claim = classify_lambda_report(4).claims[0]
        self.assertEqual(claim.evidence["case"], "UnitCase")
        self.assertEqual(claim.evidence["reduced nondegenerate"], "no")
        with self.assertRaises(ValueError):
            classify_lambda_report(0)

    def test_cycle_feasible(self):
        report = cycle_feasible_report(3, 0)
        self.assertEqual(report.details["verdict"], "infeasible")
        self.assertEqual([c.id for c in report.claims],
                         ["feasibility-cycle(3,0)", "classification-cycle(3,0)"])
        self.assertEqual(report.exit_status, 0)
        self.assertEqual(report.details["trace"]["trace"][-1]["action"], "obstruction")

    def test_enumerate(self):
        report = enumerate_report(3, -1, 0)
        self.assertEqual(len(report.claims), 8)
        self.assertEqual(report.details["feasible cycles"], "(2,-1), (2,0), (3,-1)")
        self.assertEqual(report.exit_status, 0)
        with self.assertRaises(ValueError):
            enumerate_report(1, 0, 0)
        with self.assertRaises(ValueError):
            enumerate_report(4, 2, 1)

    def test_blowup(self):
        evidence = blowup_report("L*y*dx - x*dy", "0,0").claims[0].evidence
        self.assertEqual(evidence["multiplicity"], "1")
        self.assertEqual(evidence["dicritical"], "no")
        self.assertEqual(evidence["singularities on E"], "2")
        self.assertEqual(evidence["charts glue"], "yes")

    def test_blowup_away_from_origin(self):
        evidence = blowup_report("(y-1)*dx - (x-2)*dy", "2,1").claims[0].evidence
        self.assertEqual(evidence["dicritical"], "yes")

    def test_blowup_regular_point(self):
        evidence = blowup_report("dx", "0,0").claims[0].evidence
        self.assertEqual(evidence["regular centre"], "yes")
        self.assertEqual(evidence["multiplicity"], "none (regular centre)")
        self.assertEqual(evidence["singularities on E"], "1")

    def test_blowup_syntax_error(self):
        with self.assertRaises(FormSyntaxError):
            blowup_report("y*dx -", "0,0")

    def test_grauert(self):
        claim = grauert_report("[-1,1;1,-2]").claims[0]
        self.assertEqual(claim.evidence["minors"], "-1, 1")
        self.assertEqual(claim.evidence["contractible"], "yes")
        self.assertEqual(grauert_report("[0]").claims[0].evidence["contractible"], "no")
        with self.assertRaises(ValueError):
            grauert_report("[1/2]")
        with self.assertRaises(NotSymmetric):
            grauert_report("[1,2;3,4]")

    def test_small_link(self):
        report = links_report(2)
        self.assertEqual([c.id for c in report.claims],
                         ["not-riccati-link-2", "feasibility-cycle(4,0)", "classification-cycle(4,0)"])
        self.assertEqual(report.details["covering cycle"], "(4,0)")
        self.assertEqual(report.exit_status, 0)

    def test_large_link(self):
        report = links_report(6)
        self.assertEqual([c.id for c in report.claims], ["not-riccati-link-6"])
        self.assertEqual(report.exit_status, 0)

    def test_no_link_of_four(self):
        with self.assertRaises(ValueError):
            links_report(4)
