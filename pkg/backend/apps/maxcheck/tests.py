"""Tests for the symmetry certifier and the decomposition checks."""

import numpy as np
from django.test import SimpleTestCase
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.stats import unitary_group

from apps.common.exceptions import CertificationError, InvalidStateError, UnsupportedDomainError
from apps.corr.measures import c_n_given
from apps.corr.setting import pauli_setting
from apps.qstate.ops import random_state, tensor_product
from apps.qstate.types import DensityOperator, SubsystemLayout
from apps.states.catalog import ame_abc, four_qutrit_z, ghz, phi_plus, product, psi33, w_state

from .decompose import lemma1_check, lemma2_necessary_check, one_vs_rest
from .serializers import (
    CertificationFailureSerializer,
    MaxEntDecompositionSerializer,
    SymmetryCertificateSerializer,
)
from .symmetry import certify_theorem2, check_mixed_marginals, find_symmetry


def mixture_of_isometries(weights, isometries):
    d = isometries[0].shape[1]
    phi = np.eye(d, dtype=complex).reshape(-1) / np.sqrt(d)
    rho = sum(
        w * np.outer(np.kron(v, np.eye(d)) @ phi, (np.kron(v, np.eye(d)) @ phi).conj())
        for w, v in zip(weights, isometries)
    )
    return DensityOperator(rho, SubsystemLayout((isometries[0].shape[0], d)))


class MixedMarginalsTest(SimpleTestCase):
    """Test the single-site marginal flags."""

    def test_ghz(self):
        """Test every GHZ marginal is maximally mixed."""
        self.assertEqual(check_mixed_marginals(ghz(2, 3)), [True, True, True])

    def test_w(self):
        """Test no W marginal is maximally mixed."""
        self.assertEqual(check_mixed_marginals(w_state()), [False, False, False])

    def test_product(self):
        """Test product marginals are pure."""
        self.assertEqual(check_mixed_marginals(product(2, 3)), [False, False, False])

    def test_mixed_input_rejected(self):
        """Test the certifier needs a pure state."""
        with self.assertRaises(InvalidStateError):
            check_mixed_marginals(ame_abc())


class CertifyTest(SimpleTestCase):
    """Test the Pauli-symmetry certificate."""

    @settings(max_examples=10, deadline=None)
    @given(st.integers(min_value=0, max_value=2**32 - 1))
    def test_psi33_complete_set(self, seed):
        """Test random Ψ_3,3(a,b,c) are certified for N = 4 with all exponents 1."""
        rng = np.random.default_rng(seed)
        a, b, c = rng.normal(size=3) + 1j * rng.normal(size=3)
        certificate = certify_theorem2(psi33(a, b, c), 4)
        self.assertEqual(certificate.N, 4)
        self.assertEqual(certificate.exponents, [[1, 1, 1]] * 4)
        self.assertAlmostEqual(certificate.c_value, np.log2(3), places=9)

    def test_ghz_any_dimension(self):
        """Test GHZ_d,3 is certified for N = 2 with X^⊗3 and a Z-type symmetry."""
        for d in (3, 4, 5):
            certificate = certify_theorem2(ghz(d, 3), 2)
            self.assertEqual([k.as_tuple() for k in certificate.pauli_indices], [(0, 1), (1, 0)])
            self.assertEqual(certificate.exponents[1], [1, 1, 1])
            self.assertEqual(sum(certificate.exponents[0]) % d, 0)
            self.assertAlmostEqual(certificate.c_value, np.log2(d), places=9)

    def test_ghz_four_qubits(self):
        """Test GHZ_2,4 is certified for N = 3."""
        certificate = certify_theorem2(ghz(2, 4), 3)
        self.assertEqual(
            [k.as_tuple() for k in certificate.pauli_indices], [(0, 1), (1, 0), (1, 1)]
        )
        self.assertEqual(certificate.exponents, [[1, 1, 1, 1]] * 3)

    def test_symmetries_hold(self):
        """Test each certified symmetry leaves the state invariant."""
        certificate = certify_theorem2(ghz(3, 3), 2)
        for residual in certificate.residuals:
            self.assertLessEqual(residual, 1e-9)

    def test_certified_setting_reproduces_value(self):
        """Test the certified setting gives log2 d for the first N' bases too."""
        psi = psi33(1, 2, 0.5)
        certificate = certify_theorem2(psi, 4)
        setting = certificate.setting(3)
        for count in (2, 3, 4):
            self.assertAlmostEqual(
                c_n_given(psi, setting.first(count)).c_value, np.log2(3), places=9
            )

    def test_w_not_certified(self):
        """Test W fails on its marginals."""
        with self.assertRaises(CertificationError) as ctx:
            certify_theorem2(w_state(), 2)
        self.assertEqual(ctx.exception.code, "MARGINALS_NOT_MIXED")

    def test_ghz_qubits_odd_is_inconclusive(self):
        """Test GHZ_2,3 has no Z-type symmetry with exponents in {1}."""
        with self.assertRaises(CertificationError) as ctx:
            certify_theorem2(ghz(2, 3), 2)
        self.assertEqual(ctx.exception.code, "NOT_CERTIFIED")

    def test_unsupported_domain(self):
        """Test N > 2 for non-prime d is refused."""
        with self.assertRaises(UnsupportedDomainError):
            certify_theorem2(ghz(4, 3), 3)

    def test_four_qutrit_state(self):
        """Test site-dependent exponents certify N = 2 but no uniform Z symmetry exists."""
        psi = four_qutrit_z()
        self.assertIsNone(find_symmetry(psi, (0, 1), uniform_exponents=True))
        certificate = certify_theorem2(psi, 2)
        self.assertEqual(certificate.exponents[1], [1, 1, 1, 1])
        self.assertAlmostEqual(certificate.c_value, np.log2(3), places=9)

    def test_find_symmetry_x(self):
        """Test X^⊗3 is found for GHZ_3,3."""
        exponents, residual = find_symmetry(ghz(3, 3), (1, 0))
        self.assertEqual(exponents, [1, 1, 1])
        self.assertLessEqual(residual, 1e-12)

    def test_serializers(self):
        """Test certificate and failure renderings."""
        data = SymmetryCertificateSerializer(certify_theorem2(ghz(3, 3), 2)).data
        self.assertTrue(data["certified"])
        self.assertEqual(data["pauli_indices"], [[0, 1], [1, 0]])
        with self.assertRaises(CertificationError) as ctx:
            certify_theorem2(w_state(), 2)
        failure = CertificationFailureSerializer(ctx.exception).data
        self.assertFalse(failure["certified"])
        self.assertEqual(failure["code"], "MARGINALS_NOT_MIXED")


class Lemma1Test(SimpleTestCase):
    """Test the bipartite decomposition check."""

    def test_phi_plus(self):
        """Test φ+ decomposes with a single identity isometry."""
        decomposition = lemma1_check(phi_plus(3))
        self.assertEqual(len(decomposition.weights), 1)
        np.testing.assert_allclose(decomposition.isometries[0], np.eye(3), atol=1e-12)

    def test_two_orthogonal_planes(self):
        """Test two isometries into orthogonal planes of C^4 are recovered."""
        v0 = np.eye(4)[:, :2]
        v1 = np.eye(4)[:, 2:]
        rho = mixture_of_isometries([0.5, 0.5], [v0, v1])
        decomposition = lemma1_check(rho)
        self.assertEqual(len(decomposition.weights), 2)
        np.testing.assert_allclose(decomposition.weights, [0.5, 0.5], atol=1e-12)
        for isometry in decomposition.isometries:
            np.testing.assert_allclose(isometry.conj().T @ isometry, np.eye(2), atol=1e-10)
        np.testing.assert_allclose(decomposition.reconstruct(), rho.matrix, atol=1e-10)

    @settings(max_examples=200, deadline=None)
    @given(st.integers(min_value=0, max_value=2**32 - 1))
    def test_random_isometries_round_trip(self, seed):
        """Test random orthogonal-image isometries and weights are recovered."""
        rng = np.random.default_rng(seed)
        u = unitary_group.rvs(6, random_state=rng)
        isometries = [u[:, :2], u[:, 2:4], u[:, 4:]]
        weights = rng.dirichlet(np.ones(3))
        decomposition = lemma1_check(mixture_of_isometries(weights, isometries))
        np.testing.assert_allclose(
            np.sort(decomposition.weights), np.sort(weights), atol=1e-8
        )

    @settings(max_examples=50, deadline=None)
    @given(st.integers(min_value=0, max_value=2**32 - 1))
    def test_random_separable_fails(self, seed):
        """Test full-rank product states do not decompose."""
        rng = np.random.default_rng(seed)
        rho = tensor_product(
            [
                random_state(SubsystemLayout((3,)), rng, pure=False),
                random_state(SubsystemLayout((3,)), rng, pure=False),
            ]
        )
        with self.assertRaises(CertificationError):
            lemma1_check(rho)

    def test_biased_marginal_fails(self):
        """Test a B-marginal other than I/d fails."""
        with self.assertRaises(CertificationError):
            lemma1_check(one_vs_rest(w_state(), 2))

    def test_serializer(self):
        """Test the decomposition serializes its split and isometries."""
        data = MaxEntDecompositionSerializer(lemma1_check(phi_plus(2))).data
        self.assertTrue(data["decomposable"])
        self.assertEqual(data["split"], [2, 2])
        self.assertEqual(len(data["isometries"]), 1)


class Lemma2Test(SimpleTestCase):
    """Test the one-vs-rest necessary condition."""

    def test_ame_reduction(self):
        """Test every cut of the AME reduction passes."""
        self.assertEqual(lemma2_necessary_check(ame_abc()), [True, True, True])

    def test_w(self):
        """Test every cut of W fails."""
        self.assertEqual(lemma2_necessary_check(w_state()), [False, False, False])

    def test_ghz(self):
        """Test every cut of GHZ passes."""
        self.assertEqual(lemma2_necessary_check(ghz(2, 3)), [True, True, True])

    def test_ame_reduction_reaches_maximum(self):
        """Test the mixed AME reduction reaches log2 3 with Z and X."""
        rho = ame_abc()
        self.assertAlmostEqual(
            c_n_given(rho, pauli_setting(rho.layout, 2)).c_value, np.log2(3), places=9
        )
