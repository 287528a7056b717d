from foliations.management.base import ReportCommand
from foliations.reports import blowup_report


class Command(ReportCommand):
    help = "Blow up a 1-form at a point and report multiplicity, dicriticalness and the chart forms."

    def add_command_arguments(self, parser):
        parser.add_argument("--form", required=True, help='A 1-form such as "L*y*dx - x*dy".')
        parser.add_argument("--point", default="0,0", help="The centre, as two numbers separated by a comma.")
        parser.add_argument("--const", action="append", metavar="NAME=value",
                            help="Extra named constant for the form grammar; may be repeated.")

    def build_report(self, **options):
        return blowup_report(options["form"], options["point"], self.constants(options["const"]))
