from adversary.serializers import AttackOutcomeSerializer
from bench.cli import BenchCommand, node_list
from bench.graphs import read_graph
from bench.strategies import ATTACKS, run_attack
from diffusion.specs import DiffusionSpec


class Command(BenchCommand):
    help = 'Run one attack against a blocked set and print its seeds and utility'

    def add_arguments(self, parser):
        parser.add_argument('--graph', required=True, help='graph file or dataset:<name>')
        parser.add_argument('--directed', action='store_true')
        parser.add_argument('--method', choices=ATTACKS, default='kmaxvd')
        parser.add_argument('--blocked', default='', help='comma-separated blocked nodes')
        parser.add_argument('--k-a', type=int, required=True)
        parser.add_argument('--p', type=float, default=0.1, help='IC activation probability')
        parser.add_argument('--replicas', type=int, help='evaluation replicas for IM attacks')
        parser.add_argument('--seed', type=int, default=0)

    def run(self, graph, directed, method, blocked, k_a, p, replicas, seed, **options):
        diffusion = DiffusionSpec(model='uic', p=p, seed=seed)
        report = run_attack(method, read_graph(graph, directed), node_list(blocked), k_a, None, seed, diffusion,
                            eval_replicas=replicas)
        document = AttackOutcomeSerializer(report.outcome).data
        document.update(utility=report.utility, stderr=report.stderr)
        self.write_document(document)
