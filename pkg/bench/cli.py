"""Shared plumbing for the bench management commands."""
import json
from pathlib import Path

from django.core.management.base import BaseCommand, CommandError

from influence_blocking.conf import app_setting
from influence_blocking.exceptions import InfluenceBlockingError, ParameterError


def node_list(value):
    """``"0,3,5"`` -> ``[0, 3, 5]``; the empty string is the empty list."""
    try:
        return [int(item) for item in value.split(',') if item.strip()]
    except ValueError:
        raise ParameterError(f'expected comma-separated node indices, got {value!r}') from None


def output_path(value, default_name):
    if value:
        return Path(value)
    return Path(app_setting('BENCH_OUTPUT_DIR')) / default_name


class BenchCommand(BaseCommand):
    """Runs ``run(**options)`` and turns library errors into ``CommandError``."""

    def handle(self, *args, **options):
        try:
            return self.run(**options)
        except InfluenceBlockingError as error:
            raise CommandError(str(error)) from error

    def run(self, **options):
        raise NotImplementedError

    def write_document(self, document):
        self.stdout.write(json.dumps(document, indent=2, sort_keys=True))

    def write_frame(self, frame, path):
        path.parent.mkdir(parents=True, exist_ok=True)
        frame.to_csv(path, index=False, float_format='%.10g')
        self.stdout.write(self.style.SUCCESS(f'wrote {len(frame)} rows to {path}'))
