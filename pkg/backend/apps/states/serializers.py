"""Parameter schema of the state catalog."""

from rest_framework import serializers

from apps.common.fields import ComplexField

from .catalog import FAMILIES, StateSpec


class StateSpecSerializer(serializers.Serializer):
    """Validate ``{"family": ..., <family parameters>, "p": ...}`` and build a StateSpec."""

    family = serializers.ChoiceField(choices=sorted(FAMILIES))
    d = serializers.IntegerField(min_value=2, required=False)
    n = serializers.IntegerField(min_value=2, required=False)
    a = ComplexField(required=False)
    b = ComplexField(required=False)
    c = ComplexField(required=False)
    x = serializers.ListField(
        child=serializers.FloatField(min_value=0.0), min_length=3, max_length=3, required=False
    )
    z = ComplexField(required=False)
    g = serializers.ListField(
        child=serializers.FloatField(), min_length=3, max_length=3, required=False
    )
    k = serializers.ListField(
        child=serializers.IntegerField(min_value=0), min_length=2, max_length=2, required=False
    )
    p = serializers.FloatField(min_value=0.0, max_value=1.0, required=False, allow_null=True)

    def validate(self, attrs):
        _, accepted = FAMILIES[attrs["family"]]
        extra = [key for key in attrs if key not in accepted and key not in ("family", "p")]
        if extra:
            raise serializers.ValidationError(
                {key: f"Not a parameter of family '{attrs['family']}'." for key in extra}
            )
        return attrs

    def create(self, validated_data):
        data = dict(validated_data)
        family = data.pop("family")
        p = data.pop("p", None)
        if "k" in data:
            data["k"] = tuple(data["k"])
        if "x" in data:
            data["x"] = tuple(data["x"])
        if "g" in data:
            data["g"] = tuple(data["g"])
        return StateSpec(family=family, params=data, p=p)
