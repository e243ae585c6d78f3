"""Custom DRF serializer fields for complex numerics."""

import numpy as np
from rest_framework import serializers


class ComplexField(serializers.Field):
    """A complex number as a ``[re, im]`` pair; plain numbers and ``"1-2j"`` strings also parse."""

    default_error_messages = {
        "invalid": "Expected a [re, im] pair, a number or a complex literal.",
    }

    def to_internal_value(self, data):
        try:
            if isinstance(data, (list, tuple)):
                if len(data) != 2:
                    self.fail("invalid")
                return complex(float(data[0]), float(data[1]))
            if isinstance(data, bool):
                self.fail("invalid")
            if isinstance(data, str):
                return complex(data.replace(" ", ""))
            return complex(data)
        except (TypeError, ValueError):
            self.fail("invalid")

    def to_representation(self, value):
        value = complex(value)
        return [float(value.real), float(value.imag)]


class ComplexMatrixField(serializers.ListField):
    """A complex matrix as nested lists of ``[re, im]`` pairs."""

    child = serializers.ListField(child=ComplexField(), allow_empty=False)

    def to_internal_value(self, data):
        rows = super().to_internal_value(data)
        widths = {len(row) for row in rows}
        if len(widths) != 1:
            raise serializers.ValidationError("Matrix rows must have equal length.")
        return np.array(rows, dtype=complex)

    def to_representation(self, value):
        value = np.asarray(value, dtype=complex)
        return [[[float(z.real), float(z.imag)] for z in row] for row in value]
