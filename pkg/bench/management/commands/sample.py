from bench.cli import BenchCommand
from bench.graphs import read_graph, write_graph
from netgraph.generators import forest_fire_sample


class Command(BenchCommand):
    help = 'Forest Fire sample of a graph file'

    def add_arguments(self, parser):
        parser.add_argument('--graph', required=True, help='graph file or dataset:<name>')
        parser.add_argument('--directed', action='store_true', help='read an edge list as directed')
        parser.add_argument('--target-n', type=int, required=True)
        parser.add_argument('--p-f', type=float, default=None, help='forward burning probability')
        parser.add_argument('--seed', type=int, default=0)
        parser.add_argument('--output', required=True)

    def run(self, graph, directed, target_n, p_f, seed, output, **options):
        sampled = forest_fire_sample(read_graph(graph, directed), target_n, p_f=p_f, seed=seed)
        document, edges = write_graph(sampled, output)
        self.stdout.write(f'n={sampled.n} m={sampled.m}')
        self.stdout.write(self.style.SUCCESS(f'wrote {document} and {edges}'))
