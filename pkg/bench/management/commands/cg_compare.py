from bench.cli import BenchCommand, output_path
from bench.tables import cg_compare_summary, cg_compare_table


class Command(BenchCommand):
    help = 'Compare DEF-MILP with constraint generation on growing ER graphs'

    def add_arguments(self, parser):
        parser.add_argument('--sizes', type=int, nargs='+', default=[15, 25, 35, 45, 55, 65])
        parser.add_argument('--instances', type=int, default=25)
        parser.add_argument('--gaps', type=float, nargs='+', default=[0.0])
        parser.add_argument('--k-d', type=int, default=5)
        parser.add_argument('--k-a', type=int, default=5)
        parser.add_argument('--p', type=float, default=0.1)
        parser.add_argument('--seed', type=int, default=0)
        parser.add_argument('--oracle', action='store_true', help='add a brute-force row per instance')
        parser.add_argument('--output', help='CSV path (default: BENCH_OUTPUT_DIR/cg_compare.csv)')

    def run(self, sizes, instances, gaps, k_d, k_a, p, seed, oracle, output, **options):
        frame = cg_compare_table(sizes, instances, gaps, k_D=k_d, k_A=k_a, p=p, seed=seed, oracle=oracle)
        path = output_path(output, 'cg_compare.csv')
        self.write_frame(frame, path)
        summary = cg_compare_summary(frame)
        self.stdout.write(summary.to_string(index=False))
        self.write_frame(summary, path.with_name(f'{path.stem}_summary.csv'))
        if frame['utility'].isna().any():
            self.stderr.write(self.style.WARNING('some instances failed; see the status column'))
