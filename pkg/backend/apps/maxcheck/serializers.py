"""JSON rendering of certificates and decompositions."""

from rest_framework import serializers

from apps.common.fields import ComplexMatrixField


class SymmetryCertificateSerializer(serializers.Serializer):
    certified = serializers.SerializerMethodField()
    d = serializers.IntegerField()
    N = serializers.IntegerField()
    pauli_indices = serializers.SerializerMethodField()
    exponents = serializers.ListField(child=serializers.ListField(child=serializers.IntegerField()))
    marginals_mixed = serializers.ListField(child=serializers.BooleanField())
    residuals = serializers.ListField(child=serializers.FloatField())
    c_value = serializers.FloatField()

    def get_certified(self, obj):
        return True

    def get_pauli_indices(self, obj):
        return [list(k.as_tuple()) for k in obj.pauli_indices]


class MaxEntDecompositionSerializer(serializers.Serializer):
    decomposable = serializers.SerializerMethodField()
    split = serializers.ListField(child=serializers.IntegerField())
    weights = serializers.ListField(child=serializers.FloatField())
    isometries = serializers.ListField(child=ComplexMatrixField())
    residual = serializers.FloatField()

    def get_decomposable(self, obj):
        return True


class CertificationFailureSerializer(serializers.Serializer):
    """Inconclusive or negative outcome of a certifier."""

    certified = serializers.BooleanField(default=False)
    detail = serializers.CharField()
    code = serializers.CharField()
    residuals = serializers.DictField()

    def to_representation(self, instance):
        return super().to_representation(
            {"certified": False, **instance.as_dict(), "residuals": instance.residuals}
        )
