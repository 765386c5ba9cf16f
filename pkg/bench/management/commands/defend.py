from blockade.serializers import DefenseResultSerializer
from bench.cli import BenchCommand
from bench.graphs import read_graph
from bench.strategies import DEFENSES, run_defense
from diffusion.specs import DIFFUSION_MODELS, DiffusionSpec


class Command(BenchCommand):
    help = 'Run one defense and print the blocked nodes as JSON'

    def add_arguments(self, parser):
        parser.add_argument('--graph', required=True, help='graph file or dataset:<name>')
        parser.add_argument('--directed', action='store_true')
        parser.add_argument('--method', choices=sorted(DEFENSES), default='def-milp')
        parser.add_argument('--k-d', type=int, default=0)
        parser.add_argument('--k-a', type=int, required=True)
        parser.add_argument('--l-d', type=int, help='pruned-milp candidate count')
        parser.add_argument('--order', choices=['degree', 'wdom'], default='degree')
        parser.add_argument('--gap', type=float, default=0.0, help='cg termination gap')
        parser.add_argument('--c-n', type=float, help='ev-milp node cost')
        parser.add_argument('--c-e', type=float, help='ev-milp edge cost')
        parser.add_argument('--budget', type=float, help='ev-milp budget')
        parser.add_argument('--diffusion', choices=DIFFUSION_MODELS, default='uic')
        parser.add_argument('--p', type=float, default=0.1)
        parser.add_argument('--seed', type=int, default=0)

    def run(self, graph, directed, method, k_d, k_a, diffusion, p, seed, **options):
        extra = {
            key: options[key] for key in ('l_d', 'order', 'gap', 'c_n', 'c_e', 'budget')
            if options.get(key) is not None
        }
        spec = DiffusionSpec(model=diffusion, p=p, seed=seed)
        result = run_defense(method, read_graph(graph, directed), k_d, k_a, None, seed, spec, **extra)
        self.write_document(DefenseResultSerializer(result).data)
