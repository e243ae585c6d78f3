"""End-to-end checks of the reference values across modules."""

from itertools import product

import numpy as np
from django.test import SimpleTestCase
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.stats import unitary_group

from apps.cli.targets import fig1_rows, fig5_rows, table1_rows
from apps.corr.distribution import joint_distribution
from apps.corr.measures import c_n_given, holevo_chi, maassen_uffink_bound, mutual_information_cut
from apps.corr.optimize import c_n_optimize
from apps.corr.setting import pauli_setting
from apps.maxcheck.symmetry import certify_theorem2
from apps.mub.construct import standard_mub_set
from apps.qstate.entropy import shannon_entropy
from apps.qstate.ops import random_state
from apps.qstate.types import ProbDist, SubsystemLayout
from apps.states.catalog import (
    aharonov,
    ame4,
    ame_abc,
    classical,
    four_qutrit_z,
    ghz,
    ghz_mes,
    phi_plus,
    product as product_state,
    psi33,
    qutrit_mes,
    w_state,
)
from apps.states.families import three_tangle, white_noise_mix

LOG3 = np.log2(3)


def pauli_c(state, N):
    return c_n_given(state, pauli_setting(state.layout, N)).c_value


class MaximalCorrelationTest(SimpleTestCase):
    """Test the states that reach or miss log2 d."""

    def test_ghz_and_phi_plus(self):
        """Test GHZ_2,3 and φ+ reach log2 d with the Z/X setting."""
        self.assertAlmostEqual(pauli_c(ghz(2, 3), 2), 1.0, places=9)
        for d in (2, 3, 5):
            self.assertAlmostEqual(pauli_c(phi_plus(d), 2), np.log2(d), places=9)

    def test_w_optimum(self):
        """Test the optimized C_2 of W."""
        report = c_n_optimize(w_state(), 2, restarts=32, seed=0)
        self.assertAlmostEqual(report.c_value, 0.685, delta=5e-3)

    def test_ghz_three_bases(self):
        """Test C_3 of GHZ_2,3 is 2/3 and no restart beats it."""
        self.assertAlmostEqual(pauli_c(ghz(2, 3), 3), 2 / 3, places=9)
        report = c_n_optimize(ghz(2, 3), 3, restarts=200, seed=0, max_iters=300)
        self.assertLessEqual(report.c_value, 2 / 3 + 1e-4)

    def test_ame_reduction(self):
        """Test the three-qutrit AME reduction reaches log2 3 for N = 2, 3, 4."""
        rho = ame_abc()
        for N in (2, 3, 4):
            self.assertAlmostEqual(pauli_c(rho, N), LOG3, places=9)

    @settings(max_examples=50, deadline=None)
    @given(st.integers(min_value=0, max_value=2**32 - 1))
    def test_psi33_certified(self, seed):
        """Test random Ψ_3,3(a,b,c) are certified for the complete set."""
        rng = np.random.default_rng(seed)
        a, b, c = rng.normal(size=3) + 1j * rng.normal(size=3)
        psi = psi33(a, b, c)
        certificate = certify_theorem2(psi, 4)
        self.assertAlmostEqual(certificate.c_value, LOG3, places=9)
        self.assertAlmostEqual(pauli_c(psi, 4), LOG3, places=9)


class ThresholdTableTest(SimpleTestCase):
    """Test the separable and biseparable table."""

    def test_exact_entries(self):
        """Test the qubit cells match their exact fractions."""
        cells = {(row["kind"], row["N"], row["d"]): row for row in table1_rows()}
        self.assertEqual(len(cells), 12)
        expected = {
            ("sep", 2, 2): 1 / 2,
            ("sep", 3, 2): 1 / 3,
            ("bisep", 2, 2): 5 / 6,
            ("bisep", 3, 2): 7 / 9,
        }
        for key, value in expected.items():
            self.assertAlmostEqual(cells[key]["value"], value, delta=1e-12)

    def test_qutrit_entries(self):
        """Test the qutrit cells against the reference ratios."""
        cells = {(row["kind"], row["N"], row["d"]): row for row in table1_rows()}
        reference = {
            ("sep", 2, 3): (0.5, 0.002),
            ("sep", 3, 3): (0.465, 0.002),
            ("sep", 4, 3): (0.366, 0.005),
            ("bisep", 2, 3): (0.833, 0.002),
            ("bisep", 3, 3): (0.822, 0.002),
            ("bisep", 4, 3): (0.790, 0.002),
        }
        for key, (value, tolerance) in reference.items():
            self.assertAlmostEqual(cells[key]["value_over_log2d"], value, delta=tolerance)
        self.assertIn("0.366", cells[("sep", 4, 3)]["note"])

    def test_qubit_four_bases_unsupported(self):
        """Test four bases in dimension 2 are reported as unsupported."""
        cells = {(row["kind"], row["N"], row["d"]): row for row in table1_rows()}
        self.assertNotIn("value", cells[("sep", 4, 2)])
        self.assertIn("at most 3 MUBs", cells[("bisep", 4, 2)]["note"])


class NoiseSweepTest(SimpleTestCase):
    """Test the large-dimension noise sweep."""

    def test_sweep_monotone_and_bounded(self):
        """Test p_max grows with d and stays below 1/6."""
        rows = fig5_rows(3, 1000, 40)
        values = [row["p_max"] for row in rows]
        self.assertEqual(rows[0]["d"], 3)
        self.assertEqual(rows[-1]["d"], 1000)
        self.assertTrue(all(a < b for a, b in zip(values, values[1:])))
        self.assertLessEqual(values[-1], 1 / 6 + 1e-3)


class GhzMesFamilyTest(SimpleTestCase):
    """Test the GHZ-class family properties."""

    def test_c2_strictly_decreasing(self):
        """Test C_2 of ψ_GHZ((x,x,x);1) decreases strictly in x."""
        grid = [round(0.05 * i, 12) for i in range(10)]
        values = [row["c_value"] for row in fig1_rows(grid)]
        self.assertEqual(len(values), 10)
        self.assertTrue(all(a > b for a, b in zip(values, values[1:])))

    def test_q_y_peak(self):
        """Test Q in the y basis peaks at x = 1/4."""
        grid = [round(0.2 + 0.01 * i, 12) for i in range(11)]
        rows = fig1_rows(grid)
        best = max(rows, key=lambda row: row["q_y"])
        self.assertAlmostEqual(best["x"], 0.25, delta=0.01)

    def test_tangle(self):
        """Test the three-tangle of GHZ and W."""
        self.assertAlmostEqual(three_tangle(ghz(2, 3)), 1.0, places=9)
        self.assertAlmostEqual(three_tangle(w_state()), 0.0, places=9)


def projector_oracle(state, bases):
    """tr(ρ |b_i1..b_in><b_i1..b_in|) for every outcome tuple."""
    rho = state.density().matrix
    table = np.zeros(state.layout.dims)
    for outcome in product(*(range(d) for d in state.layout.dims)):
        vector = np.array([1.0 + 0j])
        for basis, i in zip(bases, outcome):
            vector = np.kron(vector, basis.vector(i))
        table[outcome] = np.real(np.vdot(vector, rho @ vector))
    return table


def catalog_states():
    return (
        phi_plus(2),
        phi_plus(3),
        ghz(2, 3),
        ghz(3, 3),
        ghz(2, 4),
        w_state(),
        product_state(2, 3),
        classical(3, 3),
        aharonov(3),
        ame4(),
        ame_abc(),
        four_qutrit_z(),
        psi33(1.0, 0.5, 0.2j),
        ghz_mes((0.1, 0.2, 0.3), 0.8 - 0.1j),
        qutrit_mes((0.1, 0.1, 0.1)),
        white_noise_mix(ghz(3, 3), 0.3),
    )


class PropertySuiteTest(SimpleTestCase):
    """Test the structural properties on random inputs."""

    def test_catalog_distributions_match_oracle(self):
        """Test the site-by-site distribution against dense projectors on the catalog."""
        rng = np.random.default_rng(11)
        for state in catalog_states():
            d = state.layout.dims[0]
            x_basis = standard_mub_set(d, 2).bases[1]
            rotated = [
                x_basis.rotated(unitary_group.rvs(d, random_state=rng))
                for _ in range(state.layout.n)
            ]
            for bases in ([x_basis] * state.layout.n, rotated):
                np.testing.assert_allclose(
                    joint_distribution(state, bases).probs,
                    projector_oracle(state, bases),
                    atol=1e-12,
                )

    @settings(max_examples=500, deadline=None)
    @given(st.sampled_from((2, 3, 5)), st.integers(min_value=0, max_value=2**32 - 1))
    def test_maassen_uffink(self, d, seed):
        """Test H(Z) + H(X) never falls below the two-basis bound."""
        rng = np.random.default_rng(seed)
        layout = SubsystemLayout((d,))
        state = random_state(layout, rng, pure=bool(seed % 2))
        z_basis, x_basis = standard_mub_set(d, 2).bases
        total = shannon_entropy(joint_distribution(state, [z_basis])) + shannon_entropy(
            joint_distribution(state, [x_basis])
        )
        self.assertGreaterEqual(total, maassen_uffink_bound(z_basis, x_basis) - 1e-9)

    @settings(max_examples=200, deadline=None)
    @given(st.integers(min_value=0, max_value=2**32 - 1))
    def test_holevo_bound(self, seed):
        """Test measured information about the ensemble label never exceeds χ."""
        rng = np.random.default_rng(seed)
        members, d = int(rng.integers(2, 4)), int(rng.integers(2, 4))
        layout = SubsystemLayout((d,))
        weights = rng.dirichlet(np.ones(members))
        states = [random_state(layout, rng, pure=bool(i % 2)) for i in range(members)]
        basis = standard_mub_set(d, 2).bases[1].rotated(unitary_group.rvs(d, random_state=rng))
        table = np.array(
            [w * joint_distribution(s, [basis]).probs for w, s in zip(weights, states)]
        )
        information = mutual_information_cut(ProbDist(table), SubsystemLayout((members, d)), [0])
        chi = holevo_chi(list(zip(weights, states)))
        self.assertLessEqual(information, chi + 1e-9)
