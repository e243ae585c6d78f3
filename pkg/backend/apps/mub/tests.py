"""Tests for Pauli operators, MUB sets and MUM sets."""

import numpy as np
from django.test import SimpleTestCase
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.stats import unitary_group

from apps.common.exceptions import InvalidParameterError, UnsupportedDomainError

from .construct import build_mum_set, rotate_mub_set, standard_mub_set
from .pauli import (
    PauliIndex,
    gell_mann_basis,
    gen_pauli,
    mub_pauli_indices,
    omega,
    pauli_eigenbasis,
)
from .serializers import BasisSetSerializer
from .types import Basis, MubSet, is_mutually_unbiased, overlaps

SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)


class GenPauliTest(SimpleTestCase):
    """Test shift and clock products."""

    def test_qubit_shift_is_sigma_x(self):
        """Test S_{2,(1,0)} = σx."""
        np.testing.assert_allclose(gen_pauli(2, (1, 0)), SIGMA_X)

    def test_qutrit_clock(self):
        """Test S_{3,(0,1)} = diag(1, ω, ω²)."""
        w = omega(3)
        np.testing.assert_allclose(gen_pauli(3, (0, 1)), np.diag([1, w, w**2]))

    def test_qutrit_xz_columns(self):
        """Test X3 Z3 maps |j> to ω^j |j+1>."""
        w = omega(3)
        op = gen_pauli(3, (1, 1))
        for j in range(3):
            expected = np.zeros(3, dtype=complex)
            expected[(j + 1) % 3] = w**j
            np.testing.assert_allclose(op[:, j], expected, atol=1e-15)


class PauliEigenbasisTest(SimpleTestCase):
    """Test eigenbasis ordering and phase convention."""

    def test_qubit_z_is_computational(self):
        """Test the Z eigenbasis is {|0>, |1>}."""
        np.testing.assert_allclose(pauli_eigenbasis(2, (0, 1)).vectors, np.eye(2), atol=1e-14)

    def test_qubit_x_is_fourier(self):
        """Test the X eigenbasis is {|+>, |->}."""
        expected = np.array([[1, 1], [1, -1]]) / np.sqrt(2)
        np.testing.assert_allclose(pauli_eigenbasis(2, (1, 0)).vectors, expected, atol=1e-14)

    def test_qutrit_x_columns(self):
        """Test the d=3 X eigenvectors are (1, ω^-i, ω^-2i)/√3."""
        w = omega(3)
        basis = pauli_eigenbasis(3, (1, 0))
        for i in range(3):
            expected = np.array([1, w ** (-i), w ** (-2 * i)]) / np.sqrt(3)
            np.testing.assert_allclose(basis.vector(i), expected, atol=1e-12)

    def test_eigen_equation_for_prime_dimensions(self):
        """Test S|i_k> = ν ω^i |i_k> column by column for every k."""
        for d in (2, 3, 5):
            w = omega(d)
            for k1 in range(d):
                for k2 in range(d):
                    if (k1, k2) == (0, 0):
                        continue
                    op = gen_pauli(d, (k1, k2))
                    basis = pauli_eigenbasis(d, (k1, k2))
                    nu = np.vdot(basis.vector(0), op @ basis.vector(0))
                    for i in range(d):
                        np.testing.assert_allclose(
                            op @ basis.vector(i), nu * w**i * basis.vector(i), atol=1e-10
                        )

    def test_first_component_real_positive(self):
        """Test the phase convention."""
        basis = pauli_eigenbasis(5, (1, 3))
        for i in range(5):
            v = basis.vector(i)
            first = v[np.flatnonzero(np.abs(v) > 1e-12)[0]]
            self.assertAlmostEqual(first.imag, 0.0, places=12)
            self.assertGreater(first.real, 0.0)

    def test_degenerate_spectrum_rejected(self):
        """Test X² in d=4 has a degenerate spectrum."""
        with self.assertRaises(UnsupportedDomainError):
            pauli_eigenbasis(4, (2, 0))

    def test_trivial_index_rejected(self):
        """Test k = (0, 0) is refused."""
        with self.assertRaises(InvalidParameterError):
            pauli_eigenbasis(3, (0, 0))


class StandardMubSetTest(SimpleTestCase):
    """Test the standard MUB construction."""

    def test_qubit_complete_set(self):
        """Test d=2, N=3 gives σz, σx and σy eigenbases."""
        mubs = standard_mub_set(2, 3)
        self.assertEqual(mubs.N, 3)
        sigma_y = np.array([[0, -1j], [1j, 0]])
        for i in range(2):
            v = mubs.bases[2].vector(i)
            projected = sigma_y @ v
            self.assertAlmostEqual(abs(np.vdot(v, projected)), 1.0, places=12)

    def test_two_mubs_in_dimension_six(self):
        """Test Z6 and Fourier bases are unbiased."""
        mubs = standard_mub_set(6, 2)
        self.assertTrue(is_mutually_unbiased(mubs.bases))

    def test_qutrit_complete_set(self):
        """Test every pair of the four d=3 bases has overlaps 1/3."""
        mubs = standard_mub_set(3, 4)
        for a in range(4):
            for b in range(a + 1, 4):
                overlap = overlaps(mubs.bases[a], mubs.bases[b])
                np.testing.assert_allclose(overlap, 1 / 3, atol=1e-12)

    def test_ordering(self):
        """Test the deterministic Z, X, XZ^m ordering."""
        indices = [k.as_tuple() for k in mub_pauli_indices(5, 6)]
        self.assertEqual(indices, [(0, 1), (1, 0), (1, 1), (1, 2), (1, 3), (1, 4)])

    def test_too_many_bases(self):
        """Test N > d+1 is unsupported."""
        with self.assertRaises(UnsupportedDomainError):
            standard_mub_set(3, 5)

    def test_non_prime_beyond_two(self):
        """Test N > 2 for non-prime d is unsupported."""
        with self.assertRaises(UnsupportedDomainError):
            standard_mub_set(6, 3)

    def test_set_validator_rejects_biased_bases(self):
        """Test MubSet refuses two copies of one basis."""
        z = Basis(np.eye(2))
        with self.assertRaises(InvalidParameterError):
            MubSet((z, z))


class RotateMubSetTest(SimpleTestCase):
    """Test unitary rotations of MUB sets."""

    def test_identity(self):
        """Test U = I leaves the set unchanged."""
        mubs = standard_mub_set(3, 4)
        rotated = rotate_mub_set(mubs, np.eye(3))
        for before, after in zip(mubs.bases, rotated.bases):
            np.testing.assert_allclose(before.vectors, after.vectors)

    def test_hadamard_swaps_z_and_x(self):
        """Test H maps the {Z, X} set onto {X, Z}."""
        hadamard = np.array([[1, 1], [1, -1]]) / np.sqrt(2)
        mubs = standard_mub_set(2, 2)
        rotated = rotate_mub_set(mubs, hadamard)
        np.testing.assert_allclose(rotated.bases[0].vectors, mubs.bases[1].vectors, atol=1e-14)
        np.testing.assert_allclose(rotated.bases[1].vectors, mubs.bases[0].vectors, atol=1e-14)

    def test_non_unitary_rejected(self):
        """Test a non-unitary matrix is refused."""
        with self.assertRaises(InvalidParameterError):
            rotate_mub_set(standard_mub_set(2, 2), np.diag([1.0, 2.0]))

    @settings(max_examples=100, deadline=None)
    @given(st.integers(min_value=0, max_value=2**32 - 1))
    def test_random_rotation_preserves_unbiasedness(self, seed):
        """Test rotated sets pass the validator with unchanged overlaps."""
        mubs = standard_mub_set(3, 4)
        u = unitary_group.rvs(3, random_state=np.random.default_rng(seed))
        rotated = rotate_mub_set(mubs, u)
        np.testing.assert_allclose(
            overlaps(rotated.bases[0], rotated.bases[2]),
            overlaps(mubs.bases[0], mubs.bases[2]),
            atol=1e-12,
        )


class MumSetTest(SimpleTestCase):
    """Test mutually unbiased measurements."""

    def test_kappa_one_gives_mub_projectors(self):
        """Test κ = 1 returns the projectors of the complete qubit MUB set."""
        mums = build_mum_set(2, 1.0)
        mubs = standard_mub_set(2, 3)
        for elements, basis in zip(mums.measurements, mubs.bases):
            for element, projector in zip(elements, basis.projectors()):
                np.testing.assert_allclose(element, projector, atol=1e-12)

    def test_qutrit_half_efficiency(self):
        """Test tr(P_k(i) P_k(i')) = 0.25 for κ = 0.5 in d = 3."""
        mums = build_mum_set(3, 0.5)
        p, q = mums.measurements[1][0], mums.measurements[1][2]
        self.assertAlmostEqual(np.trace(p @ q).real, 0.25, places=10)
        self.assertAlmostEqual(np.trace(p @ p).real, 0.5, places=10)

    def test_kappa_at_or_below_one_over_d(self):
        """Test κ ≤ 1/d is rejected."""
        with self.assertRaises(InvalidParameterError):
            build_mum_set(2, 0.4)

    def test_gell_mann_construction(self):
        """Test the Gell-Mann construction for a non-prime dimension."""
        mums = build_mum_set(4, 0.3, operator_basis="gell-mann")
        self.assertEqual(mums.N, 5)
        self.assertEqual(mums.operator_basis, "gell-mann")

    def test_gell_mann_reports_achievable_kappa(self):
        """Test an infeasible κ names the achievable maximum."""
        with self.assertRaises(InvalidParameterError) as ctx:
            build_mum_set(3, 1.0, operator_basis="gell-mann")
        self.assertEqual(ctx.exception.code, "kappa_infeasible")
        self.assertIn("maximum", ctx.exception.detail)

    def test_gell_mann_qubit_reaches_one(self):
        """Test in d = 2 the Gell-Mann basis reaches κ = 1."""
        self.assertEqual(build_mum_set(2, 1.0, operator_basis="gell-mann").N, 3)

    def test_gell_mann_orthonormal(self):
        """Test tr(G_a G_b) = δ_ab and tracelessness."""
        ops = gell_mann_basis(4)
        self.assertEqual(len(ops), 15)
        gram = np.array([[np.trace(a @ b).real for b in ops] for a in ops])
        np.testing.assert_allclose(gram, np.eye(15), atol=1e-14)
        for op in ops:
            self.assertAlmostEqual(abs(np.trace(op)), 0.0)

    @settings(max_examples=20, deadline=None)
    @given(st.floats(min_value=0.34, max_value=1.0))
    def test_pauli_construction_valid_for_all_kappa(self, kappa):
        """Test the Pauli construction satisfies every MUM condition on (1/3, 1]."""
        self.assertAlmostEqual(build_mum_set(3, kappa).kappa, kappa)


class BasisSetSerializerTest(SimpleTestCase):
    """Test the basis-set dump."""

    def test_mub_dump(self):
        """Test metadata and matrix count of a MUB dump."""
        data = BasisSetSerializer(standard_mub_set(3, 4)).data
        self.assertEqual(data["kind"], "mub")
        self.assertEqual(data["N"], 4)
        self.assertEqual(len(data["matrices"]), 4)
        self.assertEqual(data["pauli_indices"][1], [1, 0])

    def test_mum_dump(self):
        """Test a MUM dump lists every POVM element."""
        data = BasisSetSerializer(build_mum_set(2, 0.8)).data
        self.assertEqual(data["kind"], "mum")
        self.assertAlmostEqual(data["kappa"], 0.8)
        self.assertEqual(len(data["matrices"]), 6)

    def test_pauli_index_of(self):
        """Test PauliIndex coercion from tuples."""
        self.assertEqual(PauliIndex.of((1, 2)).reduced(2).as_tuple(), (1, 0))
