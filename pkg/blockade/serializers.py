from rest_framework import serializers


class DefenseResultSerializer(serializers.Serializer):
    """``{blocked_nodes, blocked_edges, bound, method, params, iterations[]}``."""

    blocked_nodes = serializers.ListField(child=serializers.IntegerField(min_value=0))
    blocked_edges = serializers.ListField(
        child=serializers.ListField(child=serializers.IntegerField(min_value=0), min_length=2, max_length=2),
        default=list,
    )
    bound = serializers.FloatField(allow_null=True)
    method = serializers.CharField()
    params = serializers.DictField(default=dict)
    iterations = serializers.ListField(child=serializers.DictField(), default=list)

    def to_representation(self, result):
        return {
            'blocked_nodes': result.blocked.sorted(),
            'blocked_edges': [list(edge) for edge in result.blocked_edges],
            'bound': result.bound,
            'method': result.method,
            'params': dict(result.params),
            'iterations': list(result.iterations),
        }
