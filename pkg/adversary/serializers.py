from rest_framework import serializers


class AttackOutcomeSerializer(serializers.Serializer):
    seeds = serializers.ListField(child=serializers.IntegerField(min_value=0))
    value = serializers.FloatField(min_value=0)
    method = serializers.CharField()
    diagnostics = serializers.DictField(required=False, default=dict)

    def to_representation(self, outcome):
        return {
            'seeds': outcome.seeds.sorted(),
            'value': outcome.value,
            'method': outcome.method,
            'diagnostics': dict(outcome.diagnostics),
        }
