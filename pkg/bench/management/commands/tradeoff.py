from bench.cli import BenchCommand, output_path
from bench.graphs import read_graph
from bench.tables import tradeoff_table


class Command(BenchCommand):
    help = 'Run time against attacker utility of pruned DEF-MILP for several candidate sizes'

    def add_arguments(self, parser):
        parser.add_argument('--graph', required=True, help='graph file or dataset:<name>')
        parser.add_argument('--directed', action='store_true')
        parser.add_argument('--k-d', type=int, required=True)
        parser.add_argument('--k-a', type=int, required=True)
        parser.add_argument('--l-d', type=int, nargs='+', required=True)
        parser.add_argument('--order', choices=['degree', 'wdom'], default='degree')
        parser.add_argument('--p', type=float, default=0.4, help='IC probability of the IM attacker')
        parser.add_argument('--replicas', type=int)
        parser.add_argument('--seed', type=int, default=0)
        parser.add_argument('--output', help='CSV path (default: BENCH_OUTPUT_DIR/tradeoff.csv)')

    def run(self, graph, directed, k_d, k_a, l_d, order, p, replicas, seed, output, **options):
        frame = tradeoff_table(read_graph(graph, directed), k_d, k_a, l_d, order=order, p=p, replicas=replicas,
                               seed=seed)
        self.stdout.write(frame.to_string(index=False))
        self.write_frame(frame, output_path(output, 'tradeoff.csv'))
