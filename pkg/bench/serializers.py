from pathlib import Path

from rest_framework import serializers

from diffusion.specs import DIFFUSION_MODELS
from influence_blocking.exceptions import ParameterError
from netgraph.loaders import DATASETS
from netgraph.serializers import GraphSerializer

from .graphs import GRAPH_MODELS
from .strategies import ATTACKS, DEFENSES


class GraphSourceSerializer(serializers.Serializer):
    id = serializers.CharField()
    model = serializers.ChoiceField(choices=GRAPH_MODELS)
    n = serializers.IntegerField(min_value=1, required=False)
    p = serializers.FloatField(min_value=0, max_value=1, required=False)
    k = serializers.IntegerField(min_value=2, required=False)
    beta = serializers.FloatField(min_value=0, max_value=1, required=False)
    m = serializers.IntegerField(min_value=1, required=False)
    path = serializers.CharField(required=False)
    name = serializers.ChoiceField(choices=sorted(DATASETS), required=False)
    directed = serializers.BooleanField(default=False)
    sample_n = serializers.IntegerField(min_value=1, required=False)
    instances = serializers.IntegerField(min_value=1, default=1)

    def validate(self, attrs):
        model = attrs['model']
        if model in ('er', 'ws', 'ba') and 'n' not in attrs:
            raise serializers.ValidationError(f'{model} sources need n.')
        if model == 'file':
            if 'path' not in attrs:
                raise serializers.ValidationError('file sources need a path.')
            if not Path(attrs['path']).exists():
                raise serializers.ValidationError(f"{attrs['path']} does not exist.")
        if model == 'dataset' and 'name' not in attrs:
            raise serializers.ValidationError('dataset sources need a name.')
        return attrs


class DefenseEntrySerializer(serializers.Serializer):
    name = serializers.ChoiceField(choices=sorted(DEFENSES))
    l_d = serializers.IntegerField(min_value=1, required=False)
    order = serializers.ChoiceField(choices=['degree', 'wdom'], required=False)
    gap = serializers.FloatField(min_value=0, required=False)
    max_iterations = serializers.IntegerField(min_value=1, required=False)
    time_limit = serializers.FloatField(min_value=0, required=False)
    c_n = serializers.FloatField(required=False)
    c_e = serializers.FloatField(required=False)
    budget = serializers.FloatField(min_value=0, required=False)


class DiffusionConfigSerializer(serializers.Serializer):
    model = serializers.ChoiceField(choices=DIFFUSION_MODELS, default='uic')
    p = serializers.FloatField(min_value=0, max_value=1, default=0.1)


class ExperimentConfigSerializer(serializers.Serializer):
    """JSON experiment config; ``k_D`` and ``k_A`` are budget sweeps."""

    graphs = GraphSourceSerializer(many=True)
    defenses = DefenseEntrySerializer(many=True, default=list)
    attacks = serializers.ListField(child=serializers.ChoiceField(choices=ATTACKS), min_length=1)
    k_D = serializers.ListField(child=serializers.IntegerField(min_value=0), default=list)
    k_A = serializers.ListField(child=serializers.IntegerField(min_value=0), min_length=1)
    diffusion = DiffusionConfigSerializer(default=dict)
    greedy_replicas = serializers.IntegerField(min_value=1, required=False)
    eval_replicas = serializers.IntegerField(min_value=1, required=False)
    weighted = serializers.BooleanField(default=False)
    seed = serializers.IntegerField(min_value=0)
    output = serializers.CharField(required=False)

    def validate(self, attrs):
        if attrs['defenses'] and not attrs['k_D']:
            raise serializers.ValidationError('k_D is required when defenses are listed.')
        sizes = [source['n'] for source in attrs['graphs'] if 'n' in source]
        sizes += [source['sample_n'] for source in attrs['graphs'] if 'sample_n' in source]
        if sizes and max(attrs['k_D'] + attrs['k_A'], default=0) > min(sizes):
            raise serializers.ValidationError(f'budgets exceed the smallest graph ({min(sizes)} nodes).')
        return attrs


def load_config(document):
    serializer = ExperimentConfigSerializer(data=document)
    if not serializer.is_valid():
        raise ParameterError(f'invalid experiment config: {serializer.errors}')
    config = serializer.validated_data
    config['graphs'] = [dict(source) for source in config['graphs']]
    config['defenses'] = [dict(entry) for entry in config['defenses']]
    config['diffusion'] = dict(config['diffusion'])
    return dict(config)


class DefendRequestSerializer(serializers.Serializer):
    graph = GraphSerializer()
    method = serializers.ChoiceField(choices=sorted(DEFENSES), default='def-milp')
    k_D = serializers.IntegerField(min_value=0, default=0)
    k_A = serializers.IntegerField(min_value=0)
    mu = serializers.ListField(child=serializers.FloatField(min_value=0), required=False)
    l_d = serializers.IntegerField(min_value=1, required=False)
    order = serializers.ChoiceField(choices=['degree', 'wdom'], required=False)
    gap = serializers.FloatField(min_value=0, required=False)
    c_n = serializers.FloatField(required=False)
    c_e = serializers.FloatField(required=False)
    budget = serializers.FloatField(min_value=0, required=False)
    seed = serializers.IntegerField(min_value=0, default=0)


class AttackRequestSerializer(serializers.Serializer):
    graph = GraphSerializer()
    method = serializers.ChoiceField(choices=ATTACKS, default='kmaxvd')
    blocked = serializers.ListField(child=serializers.IntegerField(min_value=0), default=list)
    k_A = serializers.IntegerField(min_value=0)
    mu = serializers.ListField(child=serializers.FloatField(min_value=0), required=False)
    p = serializers.FloatField(min_value=0, max_value=1, default=0.1)
    replicas = serializers.IntegerField(min_value=1, required=False)
    seed = serializers.IntegerField(min_value=0, default=0)


class EvaluateRequestSerializer(serializers.Serializer):
    graph = GraphSerializer()
    blocked = serializers.ListField(child=serializers.IntegerField(min_value=0), default=list)
    seeds = serializers.ListField(child=serializers.IntegerField(min_value=0))
    model = serializers.ChoiceField(choices=DIFFUSION_MODELS, default='uic')
    p = serializers.FloatField(min_value=0, max_value=1, default=0.1)
    replicas = serializers.IntegerField(min_value=1, required=False)
    seed = serializers.IntegerField(min_value=0, default=0)


class InfluenceEstimateSerializer(serializers.Serializer):
    mean = serializers.FloatField(min_value=0)
    stderr = serializers.FloatField(min_value=0)
    replicas = serializers.IntegerField(min_value=1)
