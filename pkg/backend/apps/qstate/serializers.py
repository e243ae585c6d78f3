"""JSON state document: ``{"dims": [...], "kind": "pure"|"mixed", ...}``."""

import numpy as np
from rest_framework import serializers

from apps.common.exceptions import MubCorrError
from apps.common.fields import ComplexField, ComplexMatrixField

from .types import DensityOperator, StateVector, SubsystemLayout


class StateSerializer(serializers.Serializer):
    """Validate a state document and build the state with ``save()``."""

    dims = serializers.ListField(child=serializers.IntegerField(min_value=2), allow_empty=False)
    kind = serializers.ChoiceField(choices=["pure", "mixed"])
    amplitudes = serializers.ListField(child=ComplexField(), required=False, allow_empty=False)
    matrix = ComplexMatrixField(required=False, allow_empty=False)

    def validate(self, attrs):
        if attrs["kind"] == "pure" and "amplitudes" not in attrs:
            raise serializers.ValidationError({"amplitudes": "Required for a pure state."})
        if attrs["kind"] == "mixed" and "matrix" not in attrs:
            raise serializers.ValidationError({"matrix": "Required for a mixed state."})
        try:
            attrs["state"] = self._build(attrs)
        except MubCorrError as exc:
            raise serializers.ValidationError({"detail": exc.detail, "code": exc.code})
        return attrs

    @staticmethod
    def _build(attrs):
        layout = SubsystemLayout(tuple(attrs["dims"]))
        if attrs["kind"] == "pure":
            return StateVector(np.array(attrs["amplitudes"], dtype=complex), layout)
        return DensityOperator(attrs["matrix"], layout)

    def create(self, validated_data):
        return validated_data["state"]

    def to_representation(self, instance):
        data = {"dims": list(instance.layout.dims)}
        if isinstance(instance, StateVector):
            data["kind"] = "pure"
            data["amplitudes"] = [ComplexField().to_representation(z) for z in instance.amplitudes]
        else:
            data["kind"] = "mixed"
            data["matrix"] = ComplexMatrixField().to_representation(instance.matrix)
        return data
