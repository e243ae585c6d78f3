"""Tests for settings access, errors, validators, fields and the worker pool."""

import time

import numpy as np
from django.test import SimpleTestCase, override_settings
from rest_framework import serializers

from .concurrency import resolve_workers, run_parallel
from .conf import get_setting
from .exceptions import (
    CertificationError,
    InvalidParameterError,
    InvalidStateError,
    NumericalError,
    UnsupportedDomainError,
)
from .fields import ComplexField, ComplexMatrixField
from .validators import (
    DensityMatrixValidator,
    validate_dimension,
    validate_kappa,
    validate_probability,
    validate_unitary,
)


class GetSettingTest(SimpleTestCase):
    """Test reading the MUBCORR block."""

    def test_test_settings(self):
        """Test the test settings pin two workers and no registry."""
        self.assertEqual(get_setting("THREADS"), 2)
        self.assertIsNone(get_setting("BOUNDS_FILE"))

    @override_settings(MUBCORR={"OPTIMIZER": {"RESTARTS": 4}})
    def test_nested_defaults_merged(self):
        """Test a partial OPTIMIZER block keeps the remaining defaults."""
        optimizer = get_setting("OPTIMIZER")
        self.assertEqual(optimizer["RESTARTS"], 4)
        self.assertEqual(optimizer["MAX_ITERS"], 4000)
        self.assertEqual(get_setting("CSV_DIGITS"), 12)

    def test_unknown_name(self):
        """Test an unknown setting name raises KeyError."""
        with self.assertRaises(KeyError):
            get_setting("NOT_A_SETTING")


class ErrorsTest(SimpleTestCase):
    """Test the error payloads and exit codes."""

    def test_payload(self):
        """Test the error payload carries detail and code."""
        error = InvalidParameterError("p must lie in [0, 1], got 2.0.", code="p_range")
        self.assertEqual(
            error.as_dict(), {"detail": "p must lie in [0, 1], got 2.0.", "code": "p_range"}
        )
        self.assertEqual(error.exit_code, 2)

    def test_defaults(self):
        """Test default codes and exit codes."""
        error = UnsupportedDomainError()
        self.assertEqual(error.code, "UNSUPPORTED_DOMAIN")
        self.assertEqual(error.exit_code, 3)
        self.assertEqual(NumericalError().exit_code, 4)

    def test_certification_residuals(self):
        """Test a certification error keeps its residuals."""
        error = CertificationError(residuals={"marginals_mixed": [False]})
        self.assertEqual(error.code, "NOT_CERTIFIED")
        self.assertEqual(error.residuals, {"marginals_mixed": [False]})


class ValidatorsTest(SimpleTestCase):
    """Test the numeric validators."""

    def test_probability(self):
        """Test probabilities outside [0, 1] are rejected."""
        self.assertEqual(validate_probability(1), 1.0)
        with self.assertRaises(InvalidParameterError) as ctx:
            validate_probability(-0.1)
        self.assertEqual(ctx.exception.code, "p_range")

    def test_dimension(self):
        """Test dimensions are coerced to int and must be at least 2."""
        self.assertEqual(validate_dimension(3.0), 3)
        with self.assertRaises(InvalidParameterError):
            validate_dimension(1)

    def test_kappa(self):
        """Test κ snaps to 1 within tolerance and rejects values outside (1/d, 1]."""
        self.assertEqual(validate_kappa(1.0 + 1e-13, 3), 1.0)
        for kappa in (1 / 3, 0.2, 1.1):
            with self.assertRaises(InvalidParameterError):
                validate_kappa(kappa, 3)

    def test_unitary(self):
        """Test only unitary matrices pass."""
        hadamard = np.array([[1, 1], [1, -1]]) / np.sqrt(2)
        np.testing.assert_allclose(validate_unitary(hadamard), hadamard)
        with self.assertRaises(InvalidParameterError):
            validate_unitary(np.array([[1, 1], [0, 1]]))

    def test_density_matrix(self):
        """Test the density matrix validator and its help text."""
        validator = DensityMatrixValidator()
        validator.validate(np.eye(2) / 2)
        with self.assertRaises(InvalidStateError):
            validator.validate(np.diag([1.5, -0.5]))
        self.assertIn("Hermitian", validator.get_help_text())


class ComplexFieldTest(SimpleTestCase):
    """Test complex number parsing."""

    def test_accepted_forms(self):
        """Test pairs, strings and real numbers parse as complex."""
        field = ComplexField()
        self.assertEqual(field.to_internal_value([1, -2]), 1 - 2j)
        self.assertEqual(field.to_internal_value("0.5 + 0.5j"), 0.5 + 0.5j)
        self.assertEqual(field.to_internal_value(3), 3 + 0j)
        self.assertEqual(field.to_representation(1 - 2j), [1.0, -2.0])

    def test_rejected_forms(self):
        """Test malformed complex values are rejected."""
        field = ComplexField()
        for value in ([1, 2, 3], "abc", True):
            with self.assertRaises(serializers.ValidationError):
                field.to_internal_value(value)

    def test_ragged_matrix(self):
        """Test rows of different lengths are rejected."""
        with self.assertRaises(serializers.ValidationError):
            ComplexMatrixField().to_internal_value([[[1, 0]], [[0, 0], [1, 0]]])


class RunParallelTest(SimpleTestCase):
    """Test the worker pool."""

    def test_order_preserved(self):
        """Test results come back in input order."""
        def slow_square(x):
            time.sleep(0.01 * (5 - x))
            return x * x

        self.assertEqual(run_parallel(slow_square, range(5), workers=4), [0, 1, 4, 9, 16])

    def test_serial(self):
        """Test one worker runs serially."""
        self.assertEqual(run_parallel(str, [1, 2], workers=1), ["1", "2"])

    def test_resolve_workers(self):
        """Test the worker count defaults to THREADS and never drops below 1."""
        self.assertEqual(resolve_workers(), 2)
        self.assertEqual(resolve_workers(0), 1)
