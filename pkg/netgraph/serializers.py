from rest_framework import serializers

from influence_blocking.exceptions import ParameterError

from .graph import Graph


class GraphSerializer(serializers.Serializer):
    """Graph JSON document ``{directed, labels[], edges[[u, v]...], weights[]}``."""

    directed = serializers.BooleanField(default=False)
    labels = serializers.ListField(child=serializers.CharField(allow_blank=False))
    edges = serializers.ListField(
        child=serializers.ListField(child=serializers.IntegerField(min_value=0), min_length=2, max_length=2),
        default=list,
    )
    weights = serializers.ListField(child=serializers.FloatField(min_value=0), required=False)

    def validate(self, attrs):
        n = len(attrs['labels'])
        if len(set(attrs['labels'])) != n:
            raise serializers.ValidationError('Labels must be unique.')
        if 'weights' in attrs and len(attrs['weights']) != n:
            raise serializers.ValidationError(f'Expected {n} weights.')
        for u, v in attrs['edges']:
            if u >= n or v >= n:
                raise serializers.ValidationError(f'Edge ({u}, {v}) out of range.')
        return attrs

    def create(self, validated_data):
        return Graph.from_edges(
            len(validated_data['labels']),
            [tuple(edge) for edge in validated_data['edges']],
            directed=validated_data['directed'],
            weights=validated_data.get('weights'),
            labels=validated_data['labels'],
        )

    def to_representation(self, graph):
        return {
            'directed': graph.directed,
            'labels': list(graph.labels),
            'edges': [[u, v] for u, v in graph.edges()],
            'weights': graph.weights.tolist(),
        }


def graph_to_document(graph):
    return GraphSerializer(graph).data


def graph_from_document(document):
    serializer = GraphSerializer(data=document)
    if not serializer.is_valid():
        raise ParameterError(f'invalid graph document: {serializer.errors}')
    return serializer.save()
