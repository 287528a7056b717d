from foliations.management.base import ReportCommand
from foliations.reports import cycle_feasible_report


class Command(ReportCommand):
    help = "Decide whether a (k,l)-cycle can be invariant by a Riccati foliation; prints the surgery trace."

    def add_command_arguments(self, parser):
        parser.add_argument("k", type=int)
        parser.add_argument("l", type=int)

    def build_report(self, **options):
        return cycle_feasible_report(options["k"], options["l"])
