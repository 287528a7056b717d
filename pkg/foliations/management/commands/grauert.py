from foliations.management.base import ReportCommand
from foliations.reports import grauert_report


class Command(ReportCommand):
    help = "Test an intersection matrix [a,b;c,d] for negative definiteness."

    def add_command_arguments(self, parser):
        parser.add_argument("--matrix", required=True)

    def build_report(self, **options):
        return grauert_report(options["matrix"])
