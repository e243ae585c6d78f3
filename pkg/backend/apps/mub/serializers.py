"""JSON dump of a basis set: matrices plus ``{d, N, kind, kappa}`` metadata."""

from rest_framework import serializers

from apps.common.fields import ComplexMatrixField

from .types import MubSet


class BasisSetSerializer(serializers.Serializer):
    """Read-only rendering of a MubSet (basis matrices) or MumSet (POVM elements)."""

    d = serializers.IntegerField()
    N = serializers.IntegerField()
    kind = serializers.CharField()
    kappa = serializers.FloatField()
    pauli_indices = serializers.ListField(
        child=serializers.ListField(child=serializers.IntegerField())
    )
    matrices = serializers.ListField(child=ComplexMatrixField())

    def to_representation(self, instance):
        if isinstance(instance, MubSet):
            payload = {
                "d": instance.d,
                "N": instance.N,
                "kind": "mub",
                "kappa": 1.0,
                "pauli_indices": [list(k.as_tuple()) for k in instance.pauli_indices],
                "matrices": [basis.vectors for basis in instance.bases],
            }
        else:
            payload = {
                "d": instance.d,
                "N": instance.N,
                "kind": "mum",
                "kappa": instance.kappa,
                "pauli_indices": [],
                "matrices": [p for elements in instance.measurements for p in elements],
            }
        return super().to_representation(payload)
