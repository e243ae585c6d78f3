"""JSON rendering of correlation reports."""

from rest_framework import serializers


class CorrelationReportSerializer(serializers.Serializer):
    c_value = serializers.FloatField()
    normalized = serializers.FloatField()
    maximal_value = serializers.FloatField()
    N = serializers.IntegerField()
    n = serializers.IntegerField()
    per_measurement = serializers.ListField(child=serializers.FloatField())
    mutual_informations = serializers.ListField(
        child=serializers.ListField(child=serializers.FloatField())
    )
    setting = serializers.DictField()
    optimizer = serializers.DictField()
