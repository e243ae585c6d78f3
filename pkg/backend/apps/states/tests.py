"""Tests for the state catalog and parameterised families."""

import numpy as np
from django.test import SimpleTestCase
from hypothesis import given, settings
from hypothesis import strategies as st

from apps.common.exceptions import DimensionMismatchError, InvalidParameterError
from apps.corr.measures import c_n_given
from apps.corr.setting import pauli_setting
from apps.qstate.ops import partial_trace
from apps.qstate.types import DensityOperator, StateVector

from .catalog import (
    StateSpec,
    aharonov,
    ame4,
    ame_abc,
    catalog_state,
    classical,
    four_qutrit_z,
    ghz,
    psi33,
    w_state,
)
from .families import (
    ghz_mes_state,
    principal_sqrt,
    qutrit_gram,
    qutrit_mes_state,
    three_tangle,
    white_noise_mix,
)
from .serializers import StateSpecSerializer


def pauli_c2(psi):
    return c_n_given(psi, pauli_setting(psi.layout, 2)).c_value


class CatalogTest(SimpleTestCase):
    """Test named catalog states."""

    def test_ghz_qutrits(self):
        """Test GHZ_3,3 = (|000> + |111> + |222>)/√3."""
        psi = ghz(3, 3)
        nonzero = np.flatnonzero(np.abs(psi.amplitudes) > 1e-12)
        self.assertEqual(list(nonzero), [0, 13, 26])
        np.testing.assert_allclose(np.abs(psi.amplitudes[nonzero]), 1 / np.sqrt(3))

    def test_aharonov_amplitudes(self):
        """Test S_3 has six amplitudes ±1/√6 and equals Ψ_3,3(0, 1/√6, -1/√6)."""
        psi = aharonov(3)
        values = psi.amplitudes[np.abs(psi.amplitudes) > 1e-12]
        self.assertEqual(len(values), 6)
        np.testing.assert_allclose(np.abs(values), 1 / np.sqrt(6))
        self.assertAlmostEqual(values.real.sum(), 0.0)
        np.testing.assert_allclose(
            psi.amplitudes, psi33(0, 1 / np.sqrt(6), -1 / np.sqrt(6)).amplitudes, atol=1e-14
        )

    def test_ame_reduction(self):
        """Test ρ_ABC has rank 3 and completely mixed single-site marginals."""
        rho = ame_abc()
        self.assertIsInstance(rho, DensityOperator)
        self.assertEqual(int(np.sum(np.linalg.eigvalsh(rho.matrix) > 1e-10)), 3)
        for site in range(3):
            np.testing.assert_allclose(partial_trace(rho, [site]).matrix, np.eye(3) / 3, atol=1e-12)

    def test_ame_two_site_marginals(self):
        """Test every two-site marginal of the AME state is I/9."""
        psi = ame4()
        for pair in ((0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)):
            np.testing.assert_allclose(partial_trace(psi, pair).matrix, np.eye(9) / 9, atol=1e-12)

    def test_classical_state(self):
        """Test ρ_c is diagonal with weight 1/d on |i..i>."""
        rho = classical(3, 3)
        self.assertAlmostEqual(rho.matrix[0, 0].real, 1 / 3)
        self.assertAlmostEqual(rho.matrix[13, 13].real, 1 / 3)

    def test_four_qutrit_state(self):
        """Test the four-qutrit state has three equal amplitudes."""
        psi = four_qutrit_z()
        self.assertEqual(int(np.sum(np.abs(psi.amplitudes) > 1e-12)), 3)

    def test_psi33_zero_rejected(self):
        """Test a = b = c = 0 is rejected."""
        with self.assertRaises(InvalidParameterError):
            psi33(0, 0, 0)

    @settings(max_examples=30, deadline=None)
    @given(
        st.tuples(
            st.floats(min_value=-1, max_value=1),
            st.floats(min_value=-1, max_value=1),
            st.floats(min_value=-1, max_value=1),
        ).filter(lambda abc: np.linalg.norm(abc) > 0.1)
    )
    def test_psi33_marginals_mixed(self, abc):
        """Test Ψ_3,3(a,b,c) has completely mixed single-site marginals."""
        psi = psi33(*abc)
        for site in range(3):
            np.testing.assert_allclose(partial_trace(psi, [site]).matrix, np.eye(3) / 3, atol=1e-12)

    def test_catalog_state_with_noise(self):
        """Test the p parameter mixes in white noise."""
        rho = catalog_state(StateSpec("ghz", {"d": 2, "n": 3}, p=1.0))
        np.testing.assert_allclose(rho.matrix, np.eye(8) / 8, atol=1e-15)

    def test_unknown_family(self):
        """Test unknown family names are rejected."""
        with self.assertRaises(InvalidParameterError) as ctx:
            catalog_state(StateSpec("cluster"))
        self.assertEqual(ctx.exception.code, "unknown_family")

    def test_unknown_parameter(self):
        """Test parameters a family does not take are rejected."""
        with self.assertRaises(InvalidParameterError):
            catalog_state(StateSpec("w", {"d": 3}))


class GhzMesTest(SimpleTestCase):
    """Test the three-qubit GHZ-class MES family."""

    def test_origin_is_ghz(self):
        """Test x = 0, z = 1 reproduces GHZ exactly."""
        np.testing.assert_allclose(
            ghz_mes_state((0, 0, 0), 1).amplitudes, ghz(2, 3).amplitudes, atol=1e-12
        )

    def test_x_out_of_range(self):
        """Test x_j >= 1/2 is rejected."""
        with self.assertRaises(InvalidParameterError):
            ghz_mes_state((0.5, 0.1, 0.1))

    def test_z_zero_rejected(self):
        """Test z = 0 is rejected."""
        with self.assertRaises(InvalidParameterError):
            ghz_mes_state((0.1, 0.1, 0.1), 0)

    def test_tangle_declines_faster_than_c2(self):
        """Test τ3 lies below C_2 and drops faster along ψ_GHZ((x,x,x);1)."""
        xs = (0.0, 0.1, 0.2, 0.3)
        tangles = [three_tangle(ghz_mes_state((x, x, x))) for x in xs]
        c_values = [pauli_c2(ghz_mes_state((x, x, x))) for x in xs]
        for tangle, c_value in zip(tangles[1:], c_values[1:]):
            self.assertLess(tangle, c_value)
        for i in range(3):
            self.assertGreater(tangles[i] - tangles[i + 1], c_values[i] - c_values[i + 1])

    def test_c2_vanishes_at_half(self):
        """Test C_2 tends to 0 as x approaches 1/2 from below."""
        self.assertLess(pauli_c2(ghz_mes_state((0.499, 0.499, 0.499))), 1e-3)

    def test_near_ghz_parameters(self):
        """Test x ≈ 0 and z ≈ 1 keep C_2 close to 1."""
        psi = ghz_mes_state((0.001, 0.001, 0.001), 0.99999 - 0.00099j)
        self.assertGreater(pauli_c2(psi), 0.999)

    def test_principal_sqrt(self):
        """Test the square root is positive and squares back."""
        matrix = np.array([[0.5, 0.2], [0.2, 0.5]])
        root = principal_sqrt(matrix)
        np.testing.assert_allclose(root @ root, matrix, atol=1e-14)
        self.assertGreater(np.linalg.eigvalsh(root).min(), 0)


class QutritMesTest(SimpleTestCase):
    """Test the three-qutrit MES family."""

    def test_zero_g_is_psi33(self):
        """Test g = 0 gives Ψ_3,3(a,b,c) itself."""
        np.testing.assert_allclose(
            qutrit_mes_state((0, 0, 0), (1, 0), (1, 0.5, 0)).amplitudes,
            psi33(1, 0.5, 0).amplitudes,
            atol=1e-12,
        )

    def test_gram_equation(self):
        """Test g_k^† g_k equals its defining Gram form."""
        gram = qutrit_gram(0.2, (1, 0))
        root = principal_sqrt(gram)
        np.testing.assert_allclose(root.conj().T @ root, gram, atol=1e-10)

    def test_non_positive_rejected(self):
        """Test x >= 1/3 with k = (1, 0) is not positive definite."""
        with self.assertRaises(InvalidParameterError):
            qutrit_mes_state((0.34, 0.34, 0.34), (1, 0), (1, 0, 0))


class NoiseAndTangleTest(SimpleTestCase):
    """Test white noise and the three-tangle."""

    def test_no_noise(self):
        """Test p = 0 gives the pure projector."""
        psi = ghz(2, 3)
        np.testing.assert_allclose(white_noise_mix(psi, 0).matrix, psi.density().matrix)

    def test_full_noise(self):
        """Test p = 1 gives I/D."""
        np.testing.assert_allclose(white_noise_mix(w_state(), 1).matrix, np.eye(8) / 8)

    def test_noise_out_of_range(self):
        """Test p outside [0, 1] is rejected."""
        with self.assertRaises(InvalidParameterError):
            white_noise_mix(ghz(2, 3), 1.2)

    def test_tangle_ghz_and_w(self):
        """Test τ3(GHZ) = 1 and τ3(W) = 0."""
        self.assertAlmostEqual(three_tangle(ghz(2, 3)), 1.0, places=12)
        self.assertAlmostEqual(three_tangle(w_state()), 0.0, places=12)

    def test_tangle_along_mes_family(self):
        """Test τ3 along ψ_GHZ((x,x,x);1) declines as (1/4 - x²)³/(1/8 + x³)²."""
        for x in (0.1, 0.2, 0.3):
            expected = (0.25 - x**2) ** 3 / (0.125 + x**3) ** 2
            self.assertAlmostEqual(three_tangle(ghz_mes_state((x, x, x))), expected, places=10)

    def test_tangle_needs_three_qubits(self):
        """Test other layouts are rejected."""
        with self.assertRaises(DimensionMismatchError):
            three_tangle(ghz(3, 3))


class StateSpecSerializerTest(SimpleTestCase):
    """Test the catalog parameter schema."""

    def test_valid_spec(self):
        """Test a GHZ spec validates and builds."""
        serializer = StateSpecSerializer(data={"family": "ghz", "d": 3, "n": 3})
        self.assertTrue(serializer.is_valid(), serializer.errors)
        state = catalog_state(serializer.save())
        self.assertIsInstance(state, StateVector)
        self.assertEqual(state.layout.dims, (3, 3, 3))

    def test_complex_z_literal(self):
        """Test z parses from a complex literal."""
        serializer = StateSpecSerializer(
            data={"family": "ghz_mes", "x": [0.001, 0.001, 0.001], "z": "0.99999-0.00099j"}
        )
        self.assertTrue(serializer.is_valid(), serializer.errors)
        self.assertEqual(serializer.save().params["z"], complex(0.99999, -0.00099))

    def test_foreign_parameter(self):
        """Test parameters of other families are refused."""
        serializer = StateSpecSerializer(data={"family": "ame4", "d": 3})
        self.assertFalse(serializer.is_valid())
        self.assertIn("d", serializer.errors)

    def test_unknown_family(self):
        """Test the family choice list."""
        serializer = StateSpecSerializer(data={"family": "cluster"})
        self.assertFalse(serializer.is_valid())
