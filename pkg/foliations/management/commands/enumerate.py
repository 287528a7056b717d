from foliations.management.base import ReportCommand
from foliations.reports import enumerate_report


class Command(ReportCommand):
    help = "Run the feasibility search for every 2 <= k <= kmax and lmin <= l <= lmax."

    def add_command_arguments(self, parser):
        parser.add_argument("kmax", type=int)
        parser.add_argument("lmin", type=int)
        parser.add_argument("lmax", type=int)

    def build_report(self, **options):
        return enumerate_report(options["kmax"], options["lmin"], options["lmax"])
