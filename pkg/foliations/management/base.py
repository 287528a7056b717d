"""
Shared plumbing for the report-producing management commands.

Subclasses implement ``build_report(**options)``; this class renders the
report in the selected format, optionally stores it and writes it to
``FOLIATIONS_REPORT_DIR``, and maps outcomes onto exit codes:
0 when every claim passes, 1 when one fails, 2 on usage or parse errors.
"""
import logging
from pathlib import Path

from django.conf import settings
from django.core.management.base import BaseCommand, CommandError

from foliations.errors import FoliationError
from foliations.parsing import parse_number
from foliations.reports import EXTENSIONS, default_constants

logger = logging.getLogger(__name__)


class ReportCommand(BaseCommand):

    def add_arguments(self, parser):
        fmt = parser.add_mutually_exclusive_group()
        fmt.add_argument("--json", action="store_const", const="json", dest="format",
                         help="Print the report as a JSON document.")
        fmt.add_argument("--md", action="store_const", const="md", dest="format",
                         help="Print the report as a Markdown table.")
        parser.add_argument("--deterministic", action="store_true",
                            default=getattr(settings, "FOLIATIONS_DETERMINISTIC", False),
                            help="Omit the timestamp so identical inputs give identical output.")
        parser.add_argument("--save", action="store_true",
                            help="Store the report as a verification run.")
        self.add_command_arguments(parser)

    def add_command_arguments(self, parser):
        pass

    def build_report(self, **options):
        raise NotImplementedError

    def constants(self, pairs):
        constants = default_constants()
        for pair in pairs or ():
            name, sep, value = pair.partition("=")
            if not sep or not name.strip():
                raise CommandError(f"--const expects NAME=value, got {pair!r}", returncode=2)
            constants[name.strip()] = parse_number(value, constants)
        return constants

    def handle(self, *args, **options):
        fmt = options.get("format") or "text"
        try:
            report = self.build_report(**options)
        except CommandError:
            raise
        except (FoliationError, ValueError) as exc:
            raise CommandError(str(exc), returncode=2) from exc

        report.stamp(options["deterministic"])
        out = report.render(fmt)
        self.stdout.write(out, ending="")
        self._write_report_file(report, fmt, out)

        if options["save"]:
            from foliations.models import VerificationRun

            run = VerificationRun.store(report, options["deterministic"])
            logger.info("stored %s as run %s", report.command, run.pk)

        if report.exit_status:
            failed = [c.id for c in report.claims if not c.passed]
            raise CommandError(f"{len(failed)} claim(s) failed: {', '.join(failed)}", returncode=1)

    def _write_report_file(self, report, fmt: str, out: str):
        directory = getattr(settings, "FOLIATIONS_REPORT_DIR", "")
        if not directory:
            return
        name = report.command.split()[0]
        path = Path(directory) / f"{name}.{EXTENSIONS[fmt]}"
        try:
            path.parent.mkdir(parents=True, exist_ok=True)
            path.write_text(out, encoding="utf-8")
        except OSError as exc:
            logger.error("could not write report to %s: %s", path, exc)
