from django.conf import settings

from foliations.constructions import MODEL_BUILDERS
from foliations.management.base import ReportCommand
from foliations.reports import verify_report


class Command(ReportCommand):
    help = "Build a model (f1: hexagon + alpha, f2: square + beta, f3: triangle + gamma) and verify its claims."

    def add_command_arguments(self, parser):
        parser.add_argument("model", choices=sorted(MODEL_BUILDERS))
        parser.add_argument("--sign", type=int, choices=(1, -1), default=1,
                            help="Which root of the invariance condition to use for lambda.")

    def build_report(self, **options):
        return verify_report(options["model"], options["sign"], settings.FOLIATIONS_ORDER_BOUND)
