from bench.cli import BenchCommand, node_list
from bench.graphs import read_graph
from bench.serializers import InfluenceEstimateSerializer
from bench.strategies import evaluate_pair
from diffusion.specs import DIFFUSION_MODELS, DiffusionSpec


class Command(BenchCommand):
    help = 'Estimate the spread of a seed set once the blocked nodes are removed'

    def add_arguments(self, parser):
        parser.add_argument('--graph', required=True, help='graph file or dataset:<name>')
        parser.add_argument('--directed', action='store_true')
        parser.add_argument('--blocked', default='')
        parser.add_argument('--seeds', required=True)
        parser.add_argument('--model', choices=DIFFUSION_MODELS, default='uic')
        parser.add_argument('--p', type=float, default=0.1)
        parser.add_argument('--replicas', type=int)
        parser.add_argument('--seed', type=int, default=0)

    def run(self, graph, directed, blocked, seeds, model, p, replicas, seed, **options):
        spec = DiffusionSpec(model=model, p=p, replicas=replicas, seed=seed)
        estimate = evaluate_pair(read_graph(graph, directed), node_list(blocked), node_list(seeds), spec)
        self.stderr.write(f'{estimate.mean:.6f} +- {estimate.stderr:.6f} over {estimate.replicas} replicas')
        self.write_document(InfluenceEstimateSerializer(estimate).data)
