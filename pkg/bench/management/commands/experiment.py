import json
from pathlib import Path

from django.core.management.base import CommandError

from bench.cli import BenchCommand, output_path
from bench.records import write_results
from bench.runner import run_experiment
from bench.serializers import load_config
from influence_blocking.exceptions import ParameterError


class Command(BenchCommand):
    help = 'Run a defense/attack sweep from a JSON config and write the results CSV'

    def add_arguments(self, parser):
        parser.add_argument('config', help='JSON experiment config')
        parser.add_argument('--output', help='overrides the config output path')
        parser.add_argument('--workers', type=int, help='process pool size (default: BENCH_WORKERS)')

    def run(self, config, output, workers, **options):
        path = Path(config)
        if not path.exists():
            raise ParameterError(f'config {path} does not exist')
        with path.open() as stream:
            config = load_config(json.load(stream))
        records = run_experiment(config, workers)
        path = output_path(output or config.get('output'), 'experiment.csv')
        _, summary = write_results(records, path)
        self.stdout.write(summary.to_string(index=False))
        self.stdout.write(self.style.SUCCESS(f'wrote {len(records)} rows to {path}'))
        failed = [record for record in records if record.failed]
        if failed:
            raise CommandError(f'{len(failed)} of {len(records)} cells failed; first: {failed[0].error}')
