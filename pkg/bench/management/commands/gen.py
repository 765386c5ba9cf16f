from bench.cli import BenchCommand
from bench.graphs import generate, write_graph


class Command(BenchCommand):
    help = 'Generate an Erdos-Renyi, Watts-Strogatz or Barabasi-Albert graph'

    def add_arguments(self, parser):
        parser.add_argument('--model', choices=['er', 'ws', 'ba'], required=True)
        parser.add_argument('--n', type=int, required=True)
        parser.add_argument('--p', type=float, default=0.1, help='ER edge probability')
        parser.add_argument('--k', type=int, default=5, help='WS ring degree')
        parser.add_argument('--beta', type=float, default=0.15, help='WS rewiring probability')
        parser.add_argument('--m', type=int, default=3, help='BA edges per new node')
        parser.add_argument('--seed', type=int, default=0)
        parser.add_argument('--output', required=True, help='path stem for the .json and .txt files')

    def run(self, model, n, p, k, beta, m, seed, output, **options):
        graph = generate(model, n, seed=seed, p=p, k=k, beta=beta, m=m)
        document, edges = write_graph(graph, output)
        self.stdout.write(f'n={graph.n} m={graph.m}')
        self.stdout.write(self.style.SUCCESS(f'wrote {document} and {edges}'))
