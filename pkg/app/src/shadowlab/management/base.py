from django.core.management.base import BaseCommand, CommandError

from shadowlab.exceptions import ShadowLabError
from shadowlab.reports import info_json, info_text

# Exit status of a command that ran but found a failing check.
CHECK_FAILED = 1
# Exit status for bad input, unreadable files and engine errors.
USAGE_ERROR = 2


class ShadowLabCommand(BaseCommand):
    """Base for shadowlab commands: engine errors become exit status 2."""

    def handle(self, *args, **options):
        try:
            self.run(*args, **options)
        except ShadowLabError as exc:
            raise CommandError(str(exc), returncode=USAGE_ERROR) from exc
        except OSError as exc:
            raise CommandError(
                f"Cannot read input: {exc}", returncode=USAGE_ERROR
            ) from exc

    def run(self, *args, **options):
        raise NotImplementedError("subclasses of ShadowLabCommand must provide run()")

    def emit(self, command: str, subject: str, values: dict, as_json: bool):
        if as_json:
            self.stdout.write(info_json(command, subject, values))
        else:
            self.stdout.write(info_text(subject, values))
