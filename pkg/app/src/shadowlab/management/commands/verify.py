import logging

from django.core.management.base import CommandError

from shadowlab.catalog import code_entries, lattice_entries
from shadowlab.conf import get_setting
from shadowlab.management.base import CHECK_FAILED, USAGE_ERROR, ShadowLabCommand
from shadowlab.reports import report_json, report_text
from shadowlab.verification import SUITES, run_suite

logger = logging.getLogger(__name__)


class Command(ShadowLabCommand):
    help = "Run the acceptance suites over the lattice and code catalogs"

    def add_arguments(self, parser):
        parser.add_argument("suite", nargs="?", choices=SUITES, help="Suite to run")
        parser.add_argument(
            "--suite",
            dest="suite_option",
            choices=SUITES,
            help="Same as the positional",
        )
        parser.add_argument(
            "--prec", type=int, help="Series precision in quarter-exponents"
        )
        parser.add_argument("--json", action="store_true", help="Print a JSON report")
        parser.add_argument(
            "--timings", action="store_true", help="Include per-check runtimes"
        )

    def run(self, *args, **options):
        suite = options["suite"] or options["suite_option"] or "all"
        prec = options["prec"]
        if prec is None:
            prec = get_setting("SHADOWLAB_PREC")
        if prec < 1:
            raise CommandError("--prec must be positive", returncode=USAGE_ERROR)

        # Fails fast with exit status 2 when the catalog data is missing.
        lattice_entries()
        code_entries()

        command = f"verify {suite} --prec {prec}"
        report = run_suite(suite, prec, command)
        timings = options["timings"]
        if options["json"]:
            self.stdout.write(report_json(report, timings))
        else:
            self.stdout.write(report_text(report, timings))

        failures = report.failures
        if failures:
            logger.error(f"{len(failures)} of {len(report.records)} checks failed")
            raise CommandError(
                f"{len(failures)} of {len(report.records)} checks failed: "
                + ", ".join(record.name for record in failures),
                returncode=CHECK_FAILED,
            )
