from foliations.management.base import ReportCommand
from foliations.reports import links_report


class Command(ReportCommand):
    help = "Show that a link of self-intersection n is not invariant by a Riccati foliation."

    def add_command_arguments(self, parser):
        parser.add_argument("n", type=int)

    def build_report(self, **options):
        return links_report(options["n"])
