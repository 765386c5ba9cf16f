from bench.cli import BenchCommand, output_path
from bench.graphs import read_graph
from bench.tables import gap_table


class Command(BenchCommand):
    help = 'Integrality gap of the best-response LP on the unblocked graph'

    def add_arguments(self, parser):
        parser.add_argument('--graph', required=True, help='graph file or dataset:<name>')
        parser.add_argument('--directed', action='store_true')
        parser.add_argument('--k-a', type=int, nargs='+', required=True)
        parser.add_argument('--output', help='CSV path (default: BENCH_OUTPUT_DIR/gap.csv)')

    def run(self, graph, directed, k_a, output, **options):
        frame = gap_table(read_graph(graph, directed), k_a)
        self.stdout.write(frame.to_string(index=False))
        self.write_frame(frame, output_path(output, 'gap.csv'))
