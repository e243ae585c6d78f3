"""Schemas for the bound registry file and for detection output."""

import numpy as np
from rest_framework import serializers


class UncertaintyBoundSerializer(serializers.Serializer):
    """One registry entry: a lower bound on Σ_k H(B_k) for N MUBs in dimension d."""

    N = serializers.IntegerField(min_value=2)
    d = serializers.IntegerField(min_value=2)
    value = serializers.FloatField(min_value=0.0)
    provenance = serializers.CharField(default="user-supplied")
    note = serializers.CharField(required=False, allow_blank=True, default="")

    def validate(self, attrs):
        ceiling = attrs["N"] * np.log2(attrs["d"])
        if attrs["value"] > ceiling + 1e-12:
            raise serializers.ValidationError(
                {"value": f"Must not exceed N·log2(d) = {ceiling:.6f}."}
            )
        return attrs


class BoundRegistrySerializer(serializers.Serializer):
    bounds = UncertaintyBoundSerializer(many=True)


class DetectionVerdictSerializer(serializers.Serializer):
    c_value = serializers.FloatField()
    sep_threshold = serializers.FloatField()
    bisep_threshold = serializers.FloatField(allow_null=True)
    entangled = serializers.BooleanField()
    tripartite = serializers.BooleanField()
    sep_margin = serializers.FloatField()
    bisep_margin = serializers.FloatField(allow_null=True)
