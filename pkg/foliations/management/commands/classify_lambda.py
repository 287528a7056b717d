from foliations.management.base import ReportCommand
from foliations.reports import classify_lambda_report


class Command(ReportCommand):
    help = "Print the node eigenvalue quotients of a link with self-intersection n and their case."

    def add_command_arguments(self, parser):
        parser.add_argument("n", type=int)

    def build_report(self, **options):
        return classify_lambda_report(options["n"])
