"""Tests for states, tensor operations and entropies."""

from functools import reduce

import numpy as np
from django.test import SimpleTestCase
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.stats import unitary_group

from apps.common.exceptions import (
    DimensionMismatchError,
    InvalidParameterError,
    InvalidStateError,
)

from .entropy import shannon_entropy, von_neumann_entropy
from .ops import (
    apply_local,
    conjugate_local,
    fidelity_pure,
    ketbra,
    maximal_c_value,
    partial_trace,
    permute_sites,
    purity,
    random_state,
    tensor_product,
)
from .serializers import StateSerializer
from .types import DensityOperator, ProbDist, StateVector, SubsystemLayout

QUBIT = SubsystemLayout((2,))


def ghz(d, n):
    layout = SubsystemLayout((d,) * n)
    amplitudes = np.zeros(layout.total_dim, dtype=complex)
    for i in range(d):
        amplitudes[np.ravel_multi_index((i,) * n, layout.dims)] = 1.0
    return StateVector.from_unnormalized(amplitudes, layout)


class LayoutAndTypesTest(SimpleTestCase):
    """Test construction invariants of the value types."""

    def test_layout_total_dim(self):
        """Test total dimension is the product of local dimensions."""
        self.assertEqual(SubsystemLayout((2, 3, 4)).total_dim, 24)

    def test_layout_rejects_small_dims(self):
        """Test local dimensions below two are rejected."""
        with self.assertRaises(InvalidParameterError):
            SubsystemLayout((2, 1))

    def test_unnormalized_vector_rejected(self):
        """Test a state with norm != 1 is rejected."""
        with self.assertRaises(InvalidStateError):
            StateVector(np.array([1.0, 1.0]), QUBIT)

    def test_wrong_length_rejected(self):
        """Test amplitude count must match the layout."""
        with self.assertRaises(DimensionMismatchError):
            StateVector(np.array([1.0, 0.0, 0.0]), QUBIT)

    def test_density_operator_rejects_non_hermitian(self):
        """Test a non-Hermitian matrix is not a state."""
        with self.assertRaises(InvalidStateError):
            DensityOperator(np.array([[0.5, 0.1], [0.0, 0.5]]), QUBIT)

    def test_density_operator_rejects_negative_eigenvalue(self):
        """Test positivity is enforced."""
        with self.assertRaises(InvalidStateError):
            DensityOperator(np.diag([1.2, -0.2]), QUBIT)

    def test_prob_dist_clamps_round_off(self):
        """Test tiny negative probabilities are clamped to zero."""
        p = ProbDist(np.array([1.0 + 1e-13, -1e-13]))
        self.assertEqual(p.probs[1], 0.0)

    def test_prob_dist_rejects_bad_sum(self):
        """Test probabilities must sum to one."""
        with self.assertRaises(InvalidParameterError):
            ProbDist(np.array([0.5, 0.4]))

    def test_capacity_limit(self):
        """Test layouts beyond MAX_TOTAL_DIM are refused for dense states."""
        layout = SubsystemLayout((1000, 1000, 1000))
        with self.assertRaises(InvalidParameterError):
            StateVector.basis_state((0, 0, 0), layout)

    def test_flattening_site_zero_most_significant(self):
        """Test |01> sits at flat index 1 and |10> at flat index d_2."""
        layout = SubsystemLayout((3, 2))
        self.assertEqual(np.argmax(np.abs(StateVector.basis_state((0, 1), layout).amplitudes)), 1)
        self.assertEqual(np.argmax(np.abs(StateVector.basis_state((1, 0), layout).amplitudes)), 2)


class TensorProductTest(SimpleTestCase):
    """Test Kronecker products of states and operators."""

    def test_product_of_zero_kets(self):
        """Test |0>|0>|0> has amplitude 1 at index 0."""
        zero = StateVector.basis_state((0,), QUBIT)
        state = tensor_product([zero, zero, zero])
        self.assertEqual(state.layout.dims, (2, 2, 2))
        self.assertAlmostEqual(abs(state.amplitudes[0]), 1.0)

    def test_maximally_mixed_factors(self):
        """Test (I/2)⊗(I/2) = I/4."""
        half = DensityOperator(np.eye(2) / 2, QUBIT)
        rho = tensor_product([half, half])
        np.testing.assert_allclose(rho.matrix, np.eye(4) / 4, atol=1e-15)

    def test_zero_plus(self):
        """Test |0>⊗|+> = (1/√2, 1/√2, 0, 0)."""
        zero = StateVector.basis_state((0,), QUBIT)
        plus = StateVector(np.array([1, 1]) / np.sqrt(2), QUBIT)
        state = tensor_product([zero, plus])
        np.testing.assert_allclose(state.amplitudes, [1 / np.sqrt(2), 1 / np.sqrt(2), 0, 0])

    def test_mixed_kinds_rejected(self):
        """Test a pure and a mixed factor cannot be combined."""
        zero = StateVector.basis_state((0,), QUBIT)
        with self.assertRaises(InvalidParameterError):
            tensor_product([zero, zero.density()])

    def test_empty_rejected(self):
        """Test an empty factor list is rejected."""
        with self.assertRaises(InvalidParameterError):
            tensor_product([])


class PartialTraceTest(SimpleTestCase):
    """Test reduced states."""

    def test_phi_plus_marginal(self):
        """Test tr_B |φ+><φ+| = I/2."""
        reduced = partial_trace(ghz(2, 2).density(), [0])
        np.testing.assert_allclose(reduced.matrix, np.eye(2) / 2, atol=1e-15)

    def test_ghz_single_site_marginal(self):
        """Test a GHZ state has completely mixed single-site marginals."""
        for site in range(3):
            reduced = partial_trace(ghz(2, 3), [site])
            np.testing.assert_allclose(reduced.matrix, np.eye(2) / 2, atol=1e-15)

    def test_pure_and_mixed_paths_agree(self):
        """Test reducing the ket and the projector gives the same state."""
        psi = random_state(SubsystemLayout((2, 3, 2)), np.random.default_rng(3))
        np.testing.assert_allclose(
            partial_trace(psi, [0, 2]).matrix,
            partial_trace(psi.density(), [0, 2]).matrix,
            atol=1e-12,
        )

    def test_empty_keep_rejected(self):
        """Test an empty kept set is rejected."""
        with self.assertRaises(InvalidParameterError):
            partial_trace(ghz(2, 2), [])

    def test_out_of_range_site_rejected(self):
        """Test site indices are range checked."""
        with self.assertRaises(InvalidParameterError):
            partial_trace(ghz(2, 2), [2])

    @settings(max_examples=25, deadline=None)
    @given(st.integers(min_value=0, max_value=2**32 - 1))
    def test_trace_of_product_recovers_factor(self, seed):
        """Test tr_2(ρ1⊗ρ2) = ρ1."""
        rng = np.random.default_rng(seed)
        rho1 = random_state(SubsystemLayout((3,)), rng, pure=False)
        rho2 = random_state(SubsystemLayout((2,)), rng, pure=False)
        reduced = partial_trace(tensor_product([rho1, rho2]), [0])
        np.testing.assert_allclose(reduced.matrix, rho1.matrix, atol=1e-10)


class ApplyLocalTest(SimpleTestCase):
    """Test site-wise operator application."""

    def test_identity_list(self):
        """Test identities leave the state unchanged."""
        psi = ghz(3, 3)
        out = apply_local([None, np.eye(3), None], psi)
        np.testing.assert_allclose(out.amplitudes, psi.amplitudes)

    def test_sigma_x_stabilizes_ghz(self):
        """Test σx⊗σx⊗σx |GHZ> = |GHZ>."""
        x = np.array([[0, 1], [1, 0]])
        psi = ghz(2, 3)
        np.testing.assert_allclose(apply_local([x, x, x], psi).amplitudes, psi.amplitudes)

    def test_clock_stabilizes_qutrit_ghz(self):
        """Test Z3⊗Z3⊗Z3 |GHZ_3,3> = |GHZ_3,3>."""
        z = np.diag(np.exp(2j * np.pi * np.arange(3) / 3))
        psi = ghz(3, 3)
        np.testing.assert_allclose(
            apply_local([z, z, z], psi).amplitudes, psi.amplitudes, atol=1e-12
        )

    def test_dimension_mismatch(self):
        """Test operator shape must fit the site."""
        with self.assertRaises(DimensionMismatchError):
            apply_local([np.eye(2), np.eye(3)], ghz(2, 2))

    @settings(max_examples=20, deadline=None)
    @given(st.integers(min_value=0, max_value=2**32 - 1))
    def test_agrees_with_dense_kronecker(self, seed):
        """Test local application matches the dense Kronecker product."""
        rng = np.random.default_rng(seed)
        layout = SubsystemLayout((2, 4, 2, 4))
        psi = random_state(layout, rng)
        ops = [rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d)) for d in layout.dims]
        dense = reduce(np.kron, ops) @ psi.amplitudes
        np.testing.assert_allclose(apply_local(ops, psi).amplitudes, dense, atol=1e-12)


class EntropyTest(SimpleTestCase):
    """Test Shannon and von Neumann entropies."""

    def test_deterministic(self):
        """Test a point mass has zero entropy."""
        self.assertEqual(shannon_entropy(ProbDist([1.0, 0.0, 0.0])), 0.0)

    def test_uniform_qutrit(self):
        """Test the uniform distribution on three outcomes."""
        self.assertAlmostEqual(shannon_entropy(ProbDist(np.ones(3) / 3)), np.log2(3), places=12)

    def test_hand_value(self):
        """Test (1/2, 1/4, 1/4) has 1.5 bits."""
        self.assertAlmostEqual(shannon_entropy(ProbDist([0.5, 0.25, 0.25])), 1.5, places=12)

    def test_relabeling_invariance(self):
        """Test permuting outcomes leaves the entropy unchanged."""
        p = np.array([0.1, 0.2, 0.3, 0.4])
        self.assertAlmostEqual(
            shannon_entropy(ProbDist(p)), shannon_entropy(ProbDist(p[::-1])), places=14
        )

    def test_pure_state_zero(self):
        """Test pure states have zero von Neumann entropy."""
        self.assertAlmostEqual(von_neumann_entropy(ghz(2, 3).density()), 0.0, places=10)

    def test_maximally_mixed(self):
        """Test I/4 has two bits."""
        rho = DensityOperator(np.eye(4) / 4, SubsystemLayout((4,)))
        self.assertAlmostEqual(von_neumann_entropy(rho), 2.0, places=12)

    def test_partially_depolarized_qubit(self):
        """Test spectrum {0.75, 0.25} gives ≈ 0.8113 bits."""
        rho = DensityOperator(0.5 * np.diag([1.0, 0.0]) + 0.25 * np.eye(2), QUBIT)
        self.assertAlmostEqual(von_neumann_entropy(rho), 0.8112781244591328, places=10)

    @settings(max_examples=25, deadline=None)
    @given(st.integers(min_value=0, max_value=2**32 - 1))
    def test_unitary_invariance(self, seed):
        """Test S(UρU†) = S(ρ)."""
        rng = np.random.default_rng(seed)
        layout = SubsystemLayout((3, 2))
        rho = random_state(layout, rng, pure=False)
        u = unitary_group.rvs(6, random_state=rng)
        rotated = DensityOperator(u @ rho.matrix @ u.conj().T, layout)
        self.assertAlmostEqual(von_neumann_entropy(rotated), von_neumann_entropy(rho), delta=1e-9)


class HelpersTest(SimpleTestCase):
    """Test supplementary state helpers."""

    def test_purity(self):
        """Test purity of pure and maximally mixed states."""
        self.assertAlmostEqual(purity(ghz(2, 2)), 1.0)
        self.assertAlmostEqual(purity(DensityOperator(np.eye(2) / 2, QUBIT)), 0.5)

    def test_permute_sites(self):
        """Test moving site 0 to the end relabels the amplitude tensor."""
        layout = SubsystemLayout((2, 3))
        psi = StateVector.basis_state((1, 2), layout)
        moved = permute_sites(psi, (1, 0))
        self.assertEqual(moved.layout.dims, (3, 2))
        np.testing.assert_allclose(
            moved.amplitudes, StateVector.basis_state((2, 1), moved.layout).amplitudes
        )

    def test_permute_sites_mixed(self):
        """Test permuting a projector matches permuting the ket."""
        psi = random_state(SubsystemLayout((2, 3, 2)), np.random.default_rng(5))
        np.testing.assert_allclose(
            permute_sites(psi.density(), (2, 0, 1)).matrix,
            permute_sites(psi, (2, 0, 1)).density().matrix,
            atol=1e-14,
        )

    def test_ketbra(self):
        """Test a pure state becomes its projector and a mixed state passes through."""
        psi = ghz(2, 2)
        rho = ketbra(psi)
        np.testing.assert_allclose(rho.matrix, np.outer(psi.amplitudes, psi.amplitudes.conj()))
        self.assertIs(ketbra(rho), rho)

    def test_norm(self):
        """Test the norm of a valid state and of an unnormalised local image."""
        psi = ghz(3, 2)
        self.assertAlmostEqual(psi.norm(), 1.0, places=12)
        self.assertAlmostEqual(apply_local([2 * np.eye(3), None], psi).norm(), 2.0, places=12)

    def test_eigenvalues(self):
        """Test the spectrum is sorted ascending."""
        rho = DensityOperator(np.diag([0.75, 0.25]), QUBIT)
        np.testing.assert_allclose(rho.eigenvalues, [0.25, 0.75])
        np.testing.assert_allclose(ketbra(ghz(2, 2)).eigenvalues, [0, 0, 0, 1], atol=1e-12)

    def test_conjugate_local(self):
        """Test σx on site 0 maps |00><00| to |10><10|."""
        layout = SubsystemLayout((2, 2))
        x = np.array([[0, 1], [1, 0]], dtype=complex)
        rho = StateVector.basis_state((0, 0), layout).density()
        moved = conjugate_local([x, None], rho)
        np.testing.assert_allclose(
            moved.matrix, StateVector.basis_state((1, 0), layout).density().matrix
        )

    def test_conjugate_local_matches_dense(self):
        """Test local conjugation agrees with the dense Kronecker product."""
        rng = np.random.default_rng(17)
        layout = SubsystemLayout((2, 3))
        rho = random_state(layout, rng, pure=False)
        ops = [unitary_group.rvs(d, random_state=rng) for d in layout.dims]
        dense = reduce(np.kron, ops)
        np.testing.assert_allclose(
            conjugate_local(ops, rho).matrix, dense @ rho.matrix @ dense.conj().T, atol=1e-12
        )

    def test_fidelity_pure(self):
        """Test the overlap with itself, with white noise and with the mixed state."""
        psi = ghz(3, 2)
        self.assertAlmostEqual(fidelity_pure(psi, psi), 1.0, places=12)
        noisy = DensityOperator(0.7 * psi.density().matrix + 0.3 * np.eye(9) / 9, psi.layout)
        self.assertAlmostEqual(fidelity_pure(psi, noisy), 0.7 + 0.3 / 9, places=12)
        mixed = DensityOperator(np.eye(9) / 9, psi.layout)
        self.assertAlmostEqual(fidelity_pure(psi, mixed), 1 / 9, places=12)

    def test_maximal_c_value(self):
        """Test the ceiling is log2 d for equal dimensions."""
        self.assertAlmostEqual(maximal_c_value(SubsystemLayout((3, 3, 3))), np.log2(3))
        self.assertAlmostEqual(maximal_c_value(SubsystemLayout((2, 4))), 1.0)


class StateSerializerTest(SimpleTestCase):
    """Test the JSON state document."""

    def test_pure_document(self):
        """Test a valid pure document builds a StateVector."""
        data = {"dims": [2], "kind": "pure", "amplitudes": [[1, 0], [0, 0]]}
        serializer = StateSerializer(data=data)
        self.assertTrue(serializer.is_valid(), serializer.errors)
        state = serializer.save()
        self.assertIsInstance(state, StateVector)

    def test_mixed_document(self):
        """Test a valid mixed document builds a DensityOperator."""
        data = {
            "dims": [2],
            "kind": "mixed",
            "matrix": [[[0.5, 0], [0, 0]], [[0, 0], [0.5, 0]]],
        }
        serializer = StateSerializer(data=data)
        self.assertTrue(serializer.is_valid(), serializer.errors)
        self.assertIsInstance(serializer.save(), DensityOperator)

    def test_missing_amplitudes(self):
        """Test pure documents require amplitudes."""
        serializer = StateSerializer(data={"dims": [2], "kind": "pure"})
        self.assertFalse(serializer.is_valid())
        self.assertIn("amplitudes", serializer.errors)

    def test_unnormalized_document(self):
        """Test domain validation errors surface as serializer errors."""
        data = {"dims": [2], "kind": "pure", "amplitudes": [[1, 0], [1, 0]]}
        serializer = StateSerializer(data=data)
        self.assertFalse(serializer.is_valid())

    def test_representation(self):
        """Test a state renders back to the document format."""
        data = StateSerializer(ghz(2, 2)).data
        self.assertEqual(data["dims"], [2, 2])
        self.assertEqual(data["kind"], "pure")
        self.assertEqual(len(data["amplitudes"]), 4)
