"""Tests for outcome distributions, mutual informations, C_N, J_N and χ."""

from itertools import product

import numpy as np
from django.test import SimpleTestCase
from hypothesis import given, settings
from hypothesis import strategies as st

from apps.common.exceptions import DimensionMismatchError, InvalidParameterError
from apps.mub.construct import standard_mub_set
from apps.qstate.ops import apply_local, local_unitary, random_state
from apps.qstate.types import ProbDist, StateVector, SubsystemLayout
from apps.states.catalog import aharonov, ghz, phi_plus, product as product_state, w_state
from apps.states.families import white_noise_mix

from .distribution import joint_distribution, povm_distribution
from .measures import (
    c_n_given,
    holevo_chi,
    j_n_value,
    maassen_uffink_bound,
    mutual_information_cut,
    q_basis,
)
from .optimize import c_n_optimize, j_n_optimize
from .serializers import CorrelationReportSerializer
from .setting import mum_setting, pauli_setting

QUBIT = SubsystemLayout((2,))


def brute_force_distribution(psi, bases):
    """|<b_i1 ⊗ ... ⊗ b_in|psi>|² straight from the Kronecker product."""
    table = np.zeros(psi.layout.dims)
    for outcome in product(*(range(d) for d in psi.layout.dims)):
        vector = np.array([1.0 + 0j])
        for basis, i in zip(bases, outcome):
            vector = np.kron(vector, basis.vector(i))
        table[outcome] = abs(np.vdot(vector, psi.amplitudes)) ** 2
    return table


class JointDistributionTest(SimpleTestCase):
    """Test local-measurement outcome distributions."""

    def test_product_state_in_z(self):
        """Test |00> in Z⊗Z is deterministic."""
        z = standard_mub_set(2, 1).bases[0]
        p = joint_distribution(product_state(2, 2), [z, z])
        np.testing.assert_allclose(p.probs, [[1, 0], [0, 0]], atol=1e-15)

    def test_phi_plus_in_z(self):
        """Test φ+ in Z⊗Z gives 00 and 11 with probability 1/2."""
        z = standard_mub_set(2, 1).bases[0]
        p = joint_distribution(phi_plus(2), [z, z])
        np.testing.assert_allclose(p.probs, [[0.5, 0], [0, 0.5]], atol=1e-15)

    def test_ghz_in_x_has_even_parity(self):
        """Test GHZ in X⊗X⊗X is uniform on even-parity outcomes."""
        x = standard_mub_set(2, 2).bases[1]
        p = joint_distribution(ghz(2, 3), [x, x, x])
        for outcome in product(range(2), repeat=3):
            expected = 0.25 if sum(outcome) % 2 == 0 else 0.0
            self.assertAlmostEqual(p.probs[outcome], expected, places=12)

    def test_dimension_mismatch(self):
        """Test a qutrit basis on a qubit site is rejected."""
        z3 = standard_mub_set(3, 1).bases[0]
        z2 = standard_mub_set(2, 1).bases[0]
        with self.assertRaises(DimensionMismatchError):
            joint_distribution(phi_plus(2), [z2, z3])

    @settings(max_examples=50, deadline=None)
    @given(st.integers(min_value=0, max_value=2**32 - 1))
    def test_matches_projector_oracle(self, seed):
        """Test the local evaluation agrees with the Kronecker-product oracle."""
        rng = np.random.default_rng(seed)
        layout = SubsystemLayout((2, 3, 2))
        psi = random_state(layout, rng)
        bases = [standard_mub_set(d, 2).bases[int(rng.integers(2))] for d in layout.dims]
        np.testing.assert_allclose(
            joint_distribution(psi, bases).probs, brute_force_distribution(psi, bases), atol=1e-12
        )

    @settings(max_examples=30, deadline=None)
    @given(st.integers(min_value=0, max_value=2**32 - 1))
    def test_pure_and_mixed_paths_agree(self, seed):
        """Test a pure state and its projector give the same distribution."""
        rng = np.random.default_rng(seed)
        psi = random_state(SubsystemLayout((3, 3)), rng)
        x = standard_mub_set(3, 2).bases[1]
        np.testing.assert_allclose(
            joint_distribution(psi, [x, x]).probs,
            joint_distribution(psi.density(), [x, x]).probs,
            atol=1e-12,
        )

    def test_povm_of_projectors(self):
        """Test the POVM path reproduces the projective distribution."""
        bases = standard_mub_set(3, 4).bases
        psi = random_state(SubsystemLayout((3, 3)), np.random.default_rng(7))
        np.testing.assert_allclose(
            povm_distribution(psi, [bases[2].projectors(), bases[3].projectors()]).probs,
            joint_distribution(psi, [bases[2], bases[3]]).probs,
            atol=1e-12,
        )


class MutualInformationTest(SimpleTestCase):
    """Test I(A:B) across cuts."""

    def test_perfect_correlation(self):
        """Test p(00) = p(11) = 1/2 has one bit."""
        p = ProbDist(np.array([[0.5, 0], [0, 0.5]]))
        self.assertAlmostEqual(mutual_information_cut(p, SubsystemLayout((2, 2)), [0]), 1.0)

    def test_independent(self):
        """Test a product distribution has zero information."""
        p = ProbDist(np.full((3, 3), 1 / 9))
        self.assertAlmostEqual(mutual_information_cut(p, SubsystemLayout((3, 3)), [1]), 0.0)

    def test_cut_needs_complement(self):
        """Test A = every site is rejected."""
        p = ProbDist(np.full((2, 2), 0.25))
        with self.assertRaises(InvalidParameterError):
            mutual_information_cut(p, SubsystemLayout((2, 2)), [0, 1])


class CnGivenTest(SimpleTestCase):
    """Test C_N for fixed settings."""

    def test_ghz_two_mubs(self):
        """Test GHZ with {Z, X} reaches the maximum of one bit."""
        psi = ghz(2, 3)
        report = c_n_given(psi, pauli_setting(psi.layout, 2))
        self.assertAlmostEqual(report.c_value, 1.0, places=12)
        self.assertAlmostEqual(report.normalized(), 1.0, places=12)
        np.testing.assert_allclose(report.per_measurement, [1.0, 1.0], atol=1e-12)

    def test_ghz_three_mubs(self):
        """Test adding Y drops GHZ to 2/3."""
        psi = ghz(2, 3)
        report = c_n_given(psi, pauli_setting(psi.layout, 3))
        self.assertAlmostEqual(report.c_value, 2 / 3, places=12)
        self.assertAlmostEqual(report.per_measurement[2], 0.0, places=12)

    def test_product_state(self):
        """Test product states carry no correlation."""
        psi = product_state(3, 3)
        self.assertAlmostEqual(c_n_given(psi, pauli_setting(psi.layout, 4)).c_value, 0.0, places=12)

    def test_phi_plus_qutrits(self):
        """Test φ+ in Z and X carries log2 3 bits per measurement."""
        psi = phi_plus(3)
        report = c_n_given(psi, pauli_setting(psi.layout, 2))
        self.assertEqual(report.mutual_informations.shape, (2, 2))
        self.assertAlmostEqual(report.c_value, np.log2(3), places=10)

    def test_w_pauli_setting_below_optimum(self):
        """Test the unrotated setting stays below C_2(W) = 0.685."""
        psi = w_state()
        self.assertLess(c_n_given(psi, pauli_setting(psi.layout, 2)).c_value, 0.685)

    def test_single_site_rejected(self):
        """Test one site has no cut."""
        psi = StateVector(np.array([1, 0]), QUBIT)
        with self.assertRaises(InvalidParameterError):
            c_n_given(psi, pauli_setting(QUBIT, 2))

    def test_layout_mismatch(self):
        """Test a setting for other dimensions is rejected."""
        with self.assertRaises(DimensionMismatchError):
            c_n_given(ghz(2, 3), pauli_setting(SubsystemLayout((3, 3, 3)), 2))

    @settings(max_examples=30, deadline=None)
    @given(st.integers(min_value=0, max_value=2**32 - 1))
    def test_local_unitary_covariance(self, seed):
        """Test C_N(U ψ, U B) = C_N(ψ, B) for local unitaries U."""
        rng = np.random.default_rng(seed)
        layout = SubsystemLayout((2, 2, 2))
        psi = random_state(layout, rng)
        unitaries = local_unitary(layout.dims, rng)
        rotated_psi = StateVector.from_unnormalized(apply_local(unitaries, psi).amplitudes, layout)
        setting = pauli_setting(layout, 3)
        self.assertAlmostEqual(
            c_n_given(rotated_psi, setting.rotated(unitaries)).c_value,
            c_n_given(psi, setting).c_value,
            places=9,
        )

    def test_mum_at_kappa_one_matches_mubs(self):
        """Test κ = 1 MUMs reproduce the complete MUB value."""
        psi = ghz(2, 3)
        self.assertAlmostEqual(
            c_n_given(psi, mum_setting(psi.layout, 1.0)).c_value, 2 / 3, places=10
        )

    def test_mum_blurs_correlations(self):
        """Test κ < 1 lowers C_N."""
        psi = ghz(2, 3)
        self.assertLess(c_n_given(psi, mum_setting(psi.layout, 0.8)).c_value, 2 / 3)

    def test_serializer(self):
        """Test the JSON rendering of a report."""
        psi = ghz(2, 3)
        data = CorrelationReportSerializer(c_n_given(psi, pauli_setting(psi.layout, 2))).data
        self.assertAlmostEqual(data["c_value"], 1.0)
        self.assertAlmostEqual(data["normalized"], 1.0)
        self.assertEqual(data["N"], 2)
        self.assertEqual(data["n"], 3)
        self.assertEqual(len(data["mutual_informations"]), 2)
        self.assertEqual(data["setting"]["kind"], "mub")


class QBasisTest(SimpleTestCase):
    """Test single-basis correlation values."""

    def test_ghz_x_and_y(self):
        """Test GHZ has Q = 1 in X and Q = 0 in Y."""
        x, y = standard_mub_set(2, 3).bases[1:]
        psi = ghz(2, 3)
        self.assertAlmostEqual(q_basis(psi, [x] * 3)["value"], 1.0, places=12)
        self.assertAlmostEqual(q_basis(psi, [y] * 3)["value"], 0.0, places=12)


class OptimizeTest(SimpleTestCase):
    """Test the optimizer's lower bounds."""

    def test_phi_plus_reaches_one(self):
        """Test φ+ reaches one bit with two bases."""
        report = c_n_optimize(phi_plus(2), 2, restarts=2, seed=1, max_iters=200)
        self.assertAlmostEqual(report.c_value, 1.0, places=8)
        self.assertTrue(report.optimizer["lower_bound"])
        self.assertEqual(len(report.setting["parameters"]), 8)

    def test_never_below_pauli_setting(self):
        """Test the first restart starts at the unrotated setting."""
        psi = w_state()
        fixed = c_n_given(psi, pauli_setting(psi.layout, 2)).c_value
        report = c_n_optimize(psi, 2, restarts=2, seed=3, max_iters=300)
        self.assertGreaterEqual(report.c_value, fixed - 1e-10)

    def test_seed_reproducible(self):
        """Test equal seeds give equal values."""
        first = c_n_optimize(phi_plus(2), 2, restarts=3, seed=5, max_iters=100)
        second = c_n_optimize(phi_plus(2), 2, restarts=3, seed=5, max_iters=100)
        self.assertEqual(first.c_value, second.c_value)

    def test_j_n_antisymmetric_is_invariant(self):
        """Test every rotation keeps J_4(S_3) = 4."""
        result = j_n_optimize(aharonov(3), 4, restarts=2, seed=0, max_iters=50)
        self.assertAlmostEqual(result["value"], 4.0, places=10)


class JnValueTest(SimpleTestCase):
    """Test the antisymmetric-outcome witness."""

    def test_aharonov(self):
        """Test J_4(S_3) = 4."""
        self.assertAlmostEqual(j_n_value(aharonov(3), standard_mub_set(3, 4)), 4.0, places=12)

    def test_white_noise(self):
        """Test J_4(I/27) = 4 · 6/27."""
        rho = white_noise_mix(aharonov(3), 1.0)
        self.assertAlmostEqual(j_n_value(rho, standard_mub_set(3, 4)), 8 / 9, places=12)

    def test_wrong_layout(self):
        """Test J_N needs d sites of dimension d."""
        with self.assertRaises(DimensionMismatchError):
            j_n_value(ghz(3, 2), standard_mub_set(3, 4))


class HolevoTest(SimpleTestCase):
    """Test Holevo's χ and the two-basis uncertainty bound."""

    def test_single_state(self):
        """Test a one-member ensemble carries nothing."""
        psi = StateVector(np.array([1, 0]), QUBIT)
        self.assertAlmostEqual(holevo_chi([(1.0, psi)]), 0.0)

    def test_orthogonal_pair(self):
        """Test |0>, |1> with equal weights carry one bit."""
        zero = StateVector(np.array([1, 0]), QUBIT)
        one = StateVector(np.array([0, 1]), QUBIT)
        self.assertAlmostEqual(holevo_chi([(0.5, zero), (0.5, one)]), 1.0, places=12)

    def test_non_orthogonal_pair(self):
        """Test |0>, |+> carry h((1 + 1/√2)/2) ≈ 0.6009 bits."""
        zero = StateVector(np.array([1, 0]), QUBIT)
        plus = StateVector(np.array([1, 1]) / np.sqrt(2), QUBIT)
        self.assertAlmostEqual(holevo_chi([(0.5, zero), (0.5, plus)]), 0.6009, places=4)

    def test_accessible_information_below_chi(self):
        """Test measuring in Z extracts no more than χ."""
        zero = StateVector(np.array([1, 0]), QUBIT)
        plus = StateVector(np.array([1, 1]) / np.sqrt(2), QUBIT)
        # outcome table of the (input, Z outcome) pair
        p = ProbDist(np.array([[0.5, 0.0], [0.25, 0.25]]))
        information = mutual_information_cut(p, SubsystemLayout((2, 2)), [0])
        self.assertLessEqual(information, holevo_chi([(0.5, zero), (0.5, plus)]))

    def test_maassen_uffink(self):
        """Test the bound is log2 d for MUBs."""
        for d in (2, 3, 5):
            bases = standard_mub_set(d, 2).bases
            self.assertAlmostEqual(maassen_uffink_bound(*bases), np.log2(d), places=12)
