from drf_spectacular.utils import extend_schema
from rest_framework import permissions, status
from rest_framework.decorators import api_view, permission_classes
from rest_framework.response import Response

from adversary.serializers import AttackOutcomeSerializer
from blockade.serializers import DefenseResultSerializer
from diffusion.specs import DiffusionSpec
from influence_blocking.exceptions import InfluenceBlockingError
from netgraph.serializers import GraphSerializer

from .serializers import (
    AttackRequestSerializer,
    DefendRequestSerializer,
    EvaluateRequestSerializer,
    InfluenceEstimateSerializer,
)
from .strategies import evaluate_pair, run_attack, run_defense

DEFENSE_OPTIONS = ('l_d', 'order', 'gap', 'c_n', 'c_e', 'budget')


def _invalid(serializer):
    return Response({'error': serializer.errors}, status=status.HTTP_400_BAD_REQUEST)


def _failed(error):
    return Response({'error': str(error)}, status=status.HTTP_400_BAD_REQUEST)


@extend_schema(request=DefendRequestSerializer, responses=DefenseResultSerializer)
@api_view(['POST'])
@permission_classes([permissions.AllowAny])
def defend_view(request):
    serializer = DefendRequestSerializer(data=request.data)
    if not serializer.is_valid():
        return _invalid(serializer)
    data = serializer.validated_data
    options = {key: data[key] for key in DEFENSE_OPTIONS if key in data}
    try:
        graph = GraphSerializer().create(data['graph'])
        result = run_defense(data['method'], graph, data['k_D'], data['k_A'], data.get('mu'), data['seed'],
                             **options)
    except InfluenceBlockingError as error:
        return _failed(error)
    return Response(DefenseResultSerializer(result).data)


@extend_schema(request=AttackRequestSerializer, responses=AttackOutcomeSerializer)
@api_view(['POST'])
@permission_classes([permissions.AllowAny])
def attack_view(request):
    serializer = AttackRequestSerializer(data=request.data)
    if not serializer.is_valid():
        return _invalid(serializer)
    data = serializer.validated_data
    try:
        graph = GraphSerializer().create(data['graph'])
        diffusion = DiffusionSpec(model='uic', p=data['p'], seed=data['seed'])
        report = run_attack(data['method'], graph, data['blocked'], data['k_A'], data.get('mu'), data['seed'],
                            diffusion, eval_replicas=data.get('replicas'))
    except InfluenceBlockingError as error:
        return _failed(error)
    document = AttackOutcomeSerializer(report.outcome).data
    document['utility'] = report.utility
    document['stderr'] = report.stderr
    return Response(document)


@extend_schema(request=EvaluateRequestSerializer, responses=InfluenceEstimateSerializer)
@api_view(['POST'])
@permission_classes([permissions.AllowAny])
def evaluate_view(request):
    serializer = EvaluateRequestSerializer(data=request.data)
    if not serializer.is_valid():
        return _invalid(serializer)
    data = serializer.validated_data
    try:
        graph = GraphSerializer().create(data['graph'])
        spec = DiffusionSpec(model=data['model'], p=data['p'], replicas=data.get('replicas'), seed=data['seed'])
        estimate = evaluate_pair(graph, data['blocked'], data['seeds'], spec)
    except InfluenceBlockingError as error:
        return _failed(error)
    return Response(InfluenceEstimateSerializer(estimate).data)
