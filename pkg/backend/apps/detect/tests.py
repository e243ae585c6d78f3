"""Tests for the uncertainty bounds, thresholds, noise formulas and scans."""

import io
import tempfile
from pathlib import Path
from unittest import mock

import numpy as np
from django.conf import settings as django_settings
from django.test import SimpleTestCase, override_settings
from hypothesis import given, settings
from hypothesis import strategies as st

from apps.common.exceptions import InvalidParameterError, NumericalError, UnsupportedDomainError
from apps.corr.measures import c_n_given, j_n_value
from apps.corr.setting import pauli_setting
from apps.mub.construct import standard_mub_set
from apps.states.catalog import StateSpec, aharonov, classical, ghz
from apps.states.families import white_noise_mix

from .bounds import (
    MAASSEN_UFFINK,
    PAIRWISE,
    SANCHEZ_RUIZ,
    WEHNER,
    bisep_threshold,
    default_registry,
    f_bound,
    j_n_bisep_bound,
    load_registry,
    mum_thresholds,
    sep_threshold,
)
from .noisy import (
    detection_boundary,
    ghz33_noise_cn,
    j_n_noisy_aharonov,
    noisy_ghz_c2,
    p_max,
    r_quantity,
)
from .scan import DetectionVerdict, first_undetected, judge, noise_scan, write_csv
from .serializers import DetectionVerdictSerializer

LOG3 = np.log2(3)

REGISTRY_YAML = """\
bounds:
  - N: 3
    d: 3
    value: 3.0
    note: numerically optimal
"""


def write_registry(directory, text):
    path = Path(directory) / "bounds.yaml"
    path.write_text(text, encoding="utf-8")
    return path


def dense_ghz_c_value(d, p, N):
    rho = white_noise_mix(ghz(d, 3), p)
    return c_n_given(rho, pauli_setting(rho.layout, N)).c_value


class FBoundTest(SimpleTestCase):
    """Test the choice of the best uncertainty bound."""

    def test_two_bases(self):
        """Test two bases use the Maassen-Uffink bound log2 d."""
        for d in (2, 3, 5, 7):
            bound = f_bound(2, d, registry={})
            self.assertAlmostEqual(bound.value, np.log2(d), places=12)
            self.assertEqual(bound.provenance, MAASSEN_UFFINK)

    def test_qubits_complete_set(self):
        """Test three qubit bases use the complete-set bound 2."""
        bound = f_bound(3, 2, registry={})
        self.assertAlmostEqual(bound.value, 2.0, places=12)
        self.assertEqual(bound.provenance, SANCHEZ_RUIZ)

    def test_qutrits_three_bases(self):
        """Test three qutrit bases use the Wehner bound."""
        bound = f_bound(3, 3, registry={})
        self.assertAlmostEqual(bound.value, -3 * np.log2(5 / 9), places=12)
        self.assertAlmostEqual(bound.value, 2.544, places=3)
        self.assertEqual(bound.provenance, WEHNER)

    def test_pairwise_never_wins_ties(self):
        """Test the pairwise bound is not reported when Wehner matches or beats it."""
        self.assertNotEqual(f_bound(4, 3, registry={}).provenance, PAIRWISE)

    def test_needs_two_bases(self):
        """Test f needs at least two bases."""
        with self.assertRaises(InvalidParameterError):
            f_bound(1, 3, registry={})

    def test_registry_strengthens(self):
        """Test a larger registered value replaces the formula bound."""
        with tempfile.TemporaryDirectory() as directory:
            registry = load_registry(write_registry(directory, REGISTRY_YAML))
        bound = f_bound(3, 3, registry=registry)
        self.assertEqual(bound.value, 3.0)
        self.assertEqual(bound.provenance, "user-supplied")
        self.assertGreater(sep_threshold(3, 3, registry), 0)
        self.assertLess(sep_threshold(3, 3, registry), sep_threshold(3, 3, {}))

    def test_weaker_registry_entry_ignored(self):
        """Test a weaker registered value leaves the formula bound in place."""
        with tempfile.TemporaryDirectory() as directory:
            text = "bounds:\n  - {N: 3, d: 3, value: 1.0}\n"
            registry = load_registry(write_registry(directory, text))
        self.assertEqual(f_bound(3, 3, registry=registry).provenance, WEHNER)

    def test_registry_rejects_impossible_value(self):
        """Test a value above N log2 d is rejected."""
        with tempfile.TemporaryDirectory() as directory:
            path = write_registry(directory, "bounds:\n  - {N: 2, d: 2, value: 5.0}\n")
            with self.assertRaises(InvalidParameterError):
                load_registry(path)

    def test_registry_from_settings(self):
        """Test BOUNDS_FILE selects the default registry."""
        with tempfile.TemporaryDirectory() as directory:
            path = write_registry(directory, REGISTRY_YAML)
            with override_settings(MUBCORR={"BOUNDS_FILE": str(path)}):
                self.assertIn((3, 3), default_registry())
        self.assertEqual(default_registry(), {})

    def test_shipped_registry(self):
        """Test the shipped registry holds f(3, 3) = 3."""
        registry = load_registry(django_settings.BASE_DIR / "data" / "bounds.yaml")
        self.assertEqual(registry[(3, 3)].value, 3.0)


class ThresholdTest(SimpleTestCase):
    """Test separability and biseparability thresholds."""

    def test_qubit_fractions(self):
        """Test the qubit thresholds are exact fractions."""
        self.assertAlmostEqual(sep_threshold(2, 2, {}), 0.5, delta=1e-12)
        self.assertAlmostEqual(sep_threshold(3, 2, {}), 1 / 3, delta=1e-12)
        self.assertAlmostEqual(bisep_threshold(2, 2, {}), 5 / 6, delta=1e-12)
        self.assertAlmostEqual(bisep_threshold(3, 2, {}), 7 / 9, delta=1e-12)

    def test_two_bases_any_dimension(self):
        """Test two bases give log2 d / 2 and 5 log2 d / 6 in any dimension."""
        for d in (3, 4, 6, 10):
            self.assertAlmostEqual(sep_threshold(2, d, {}), np.log2(d) / 2, places=12)
            self.assertAlmostEqual(bisep_threshold(2, d, {}), 5 * np.log2(d) / 6, places=12)

    def test_qutrit_values(self):
        """Test the qutrit thresholds against the reference ratios."""
        self.assertAlmostEqual(sep_threshold(3, 3, {}) / LOG3, 0.465, delta=0.002)
        self.assertAlmostEqual(bisep_threshold(3, 3, {}) / LOG3, 0.822, delta=0.002)
        self.assertAlmostEqual(bisep_threshold(4, 3, {}) / LOG3, 0.790, delta=0.002)
        self.assertAlmostEqual(sep_threshold(4, 3, {}) / LOG3, 0.366, delta=0.005)

    def test_ordering(self):
        """Test sep < bisep < log2 d."""
        for d in (2, 3, 5):
            for N in range(2, d + 2):
                sep, bisep = sep_threshold(N, d, {}), bisep_threshold(N, d, {})
                self.assertLess(sep, bisep)
                self.assertLess(bisep, np.log2(d))

    def test_unsupported(self):
        """Test more than d+1 bases are unsupported."""
        with self.assertRaises(UnsupportedDomainError):
            sep_threshold(4, 2, {})
        with self.assertRaises(UnsupportedDomainError):
            bisep_threshold(6, 4, {})

    def test_non_prime_dimension(self):
        """Test thresholds exist for N > 2 bases in non-prime dimensions."""
        bound = f_bound(5, 4, {})
        self.assertEqual(bound.provenance, SANCHEZ_RUIZ)
        self.assertAlmostEqual(sep_threshold(5, 4, {}), 2 - bound.value / 5, places=12)
        self.assertAlmostEqual(bisep_threshold(5, 4, {}), 2 - bound.value / 15, places=12)
        self.assertAlmostEqual(sep_threshold(5, 4, {}), 2 - (2 + 3 * np.log2(3)) / 5, places=12)
        for N, d in ((3, 4), (9, 8), (4, 6)):
            self.assertLess(sep_threshold(N, d, {}), bisep_threshold(N, d, {}))

    def test_mum_complete_set(self):
        """Test the complete MUM set at κ = 1 for qubits."""
        sep, bisep = mum_thresholds(2, 1.0)
        self.assertAlmostEqual(sep, 1 - np.log2(1.5), places=12)
        self.assertAlmostEqual(bisep, 1 - np.log2(1.5) / 3, places=12)

    def test_mum_identity(self):
        """Test κ = 1 gives log2(1 + (d-1)/(d+1))."""
        for d in (2, 3, 5, 7):
            self.assertAlmostEqual(
                mum_thresholds(d, 1.0)[0], np.log2(1 + (d - 1) / (d + 1)), places=12
            )

    def test_mum_monotone_in_kappa(self):
        """Test the MUM threshold grows with κ."""
        kappas = np.linspace(0.51, 1.0, 20)
        seps = [mum_thresholds(2, kappa)[0] for kappa in kappas]
        self.assertTrue(np.all(np.diff(seps) > 0))
        self.assertLess(seps[0], 0.01)

    def test_mum_kappa_range(self):
        """Test κ must exceed 1/d."""
        with self.assertRaises(InvalidParameterError):
            mum_thresholds(3, 1 / 3)

    def test_j_bisep_bound(self):
        """Test 1 + (N-1)/d."""
        self.assertEqual(j_n_bisep_bound(4, 3), 2.0)
        self.assertEqual(j_n_bisep_bound(2, 2), 1.5)
        self.assertEqual(j_n_bisep_bound(1, 5), 1.0)

    def test_classical_state_saturates(self):
        """Test ρ_c sits exactly on the separability threshold."""
        for d in (2, 3, 5):
            rho = classical(d, 3)
            value = c_n_given(rho, pauli_setting(rho.layout, 2)).c_value
            self.assertAlmostEqual(value, sep_threshold(2, d, {}), places=12)


class Ghz33NoiseTest(SimpleTestCase):
    """Test the closed form for noisy GHZ_3,3."""

    def test_pure(self):
        """Test the pure state reaches log2 3."""
        for N in (2, 3, 4):
            self.assertAlmostEqual(ghz33_noise_cn(0.0, N), LOG3, places=12)

    def test_fully_mixed(self):
        """Test full noise gives zero."""
        for N in (2, 3, 4):
            self.assertAlmostEqual(ghz33_noise_cn(1.0, N), 0.0, places=12)

    def test_matches_dense(self):
        """Test the closed form against the dense state."""
        for p in (0.0, 0.05, 0.2, 0.7, 1.0):
            for N in (2, 3, 4):
                self.assertAlmostEqual(
                    ghz33_noise_cn(p, N), dense_ghz_c_value(3, p, N), delta=1e-9
                )

    def test_bisep_crossing(self):
        """Test the four-basis biseparable crossing near 8.33%."""
        boundary = detection_boundary(lambda p: ghz33_noise_cn(p, 4), bisep_threshold(4, 3, {}))
        self.assertAlmostEqual(boundary, 0.0833, delta=5e-4)

    def test_rejects_bad_input(self):
        """Test p and N outside their ranges are rejected."""
        with self.assertRaises(InvalidParameterError):
            ghz33_noise_cn(1.5, 2)
        with self.assertRaises(InvalidParameterError):
            ghz33_noise_cn(0.1, 5)


class RQuantityTest(SimpleTestCase):
    """Test R(p; d) and the noise tolerance p_max(d)."""

    def test_pure_ghz(self):
        """Test R(0; d) = 6/5."""
        for d in (2, 3, 10, 1000):
            self.assertAlmostEqual(r_quantity(0.0, d), 1.2, places=12)

    def test_matches_dense(self):
        """Test the closed-form C_2 against the dense state."""
        for d in (2, 3, 5):
            for p in (0.0, 0.1, 0.5):
                self.assertAlmostEqual(noisy_ghz_c2(p, d), dense_ghz_c_value(d, p, 2), delta=1e-9)

    def test_qutrit_closed_forms_agree(self):
        """Test the general and qutrit closed forms agree."""
        for p in (0.0, 0.03, 0.4, 0.9):
            self.assertAlmostEqual(noisy_ghz_c2(p, 3), ghz33_noise_cn(p, 2), places=12)

    def test_large_dimension(self):
        """Test R approaches 6/5 (1-p) from below as d grows."""
        values = [r_quantity(0.1, d) for d in (48, 1000)]
        self.assertLess(values[0], values[1])
        self.assertLess(values[1], 1.08)
        self.assertAlmostEqual(values[1], 1.08, delta=0.035)

    def test_p_max_values(self):
        """Test p_max against the reference values."""
        expected = {3: 0.0709, 6: 0.0882, 12: 0.1017, 24: 0.1118, 48: 0.1195}
        for d, value in expected.items():
            self.assertAlmostEqual(p_max(d), value, delta=5e-4)

    def test_p_max_root(self):
        """Test R(p_max) = 1."""
        self.assertAlmostEqual(r_quantity(p_max(3, tol=1e-10), 3), 1.0, delta=1e-8)

    def test_p_max_residual(self):
        """Test the returned root meets |R - 1| ≤ tol."""
        for d, tol in ((3, 1e-6), (12, 1e-8), (48, 1e-10)):
            self.assertLessEqual(abs(r_quantity(p_max(d, tol=tol), d) - 1.0), tol)

    def test_p_max_residual_failure(self):
        """Test a jump across 1 is reported rather than returned as a root."""
        with mock.patch("apps.detect.noisy.r_quantity", lambda p, d: 2.0 if p < 0.5 else 0.0):
            with self.assertRaises(NumericalError) as ctx:
                p_max(3)
        self.assertEqual(ctx.exception.code, "residual")

    def test_p_max_monotone_and_bounded(self):
        """Test p_max grows with d and stays below 1/6."""
        values = [p_max(d) for d in (3, 10, 100, 1000)]
        self.assertTrue(np.all(np.diff(values) > 0))
        self.assertLess(values[-1], 1 / 6 + 1e-3)

    @settings(max_examples=50, deadline=None)
    @given(st.floats(min_value=0.0, max_value=0.99), st.integers(min_value=2, max_value=200))
    def test_r_decreasing(self, p, d):
        """Test R decreases in p."""
        self.assertGreater(r_quantity(p, d), r_quantity(p + 0.01, d))


class BoundaryTest(SimpleTestCase):
    """Test detection boundaries of the noisy example states."""

    def test_ghz_qubits(self):
        """Test noisy GHZ_2,3 is detected up to 5.94%."""
        boundary = detection_boundary(lambda p: noisy_ghz_c2(p, 2), bisep_threshold(2, 2, {}))
        self.assertAlmostEqual(boundary, 0.0594, delta=1e-3)

    def test_aharonov_c4(self):
        """Test the Pauli setting detects noisy S_3 beyond 9.18% noise."""
        state = aharonov(3)
        setting = pauli_setting(state.layout, 4)

        def c_value(p):
            return c_n_given(white_noise_mix(state, p), setting).c_value

        boundary = detection_boundary(c_value, bisep_threshold(4, 3, {}), lo=0.0, hi=0.5, xtol=1e-6)
        self.assertAlmostEqual(boundary, 0.0918, delta=1e-3)

    def test_aharonov_j4(self):
        """Test J_4 of noisy S_3 crosses its bound at 9/14."""
        boundary = detection_boundary(lambda p: j_n_noisy_aharonov(p, 4), j_n_bisep_bound(4, 3))
        self.assertAlmostEqual(boundary, 9 / 14, delta=1e-9)
        self.assertAlmostEqual(boundary, 0.6429, delta=1e-3)

    def test_aharonov_j4_dense(self):
        """Test the J_4 closed form against the dense state."""
        mub_set = standard_mub_set(3, 4)
        for p in (0.0, 0.3, 1.0):
            rho = white_noise_mix(aharonov(3), p)
            self.assertAlmostEqual(j_n_value(rho, mub_set), j_n_noisy_aharonov(p, 4), places=10)

    def test_no_crossing(self):
        """Test a threshold that is never reached is reported."""
        with self.assertRaises(NumericalError):
            detection_boundary(lambda p: noisy_ghz_c2(p, 2), 2.0)


class VerdictTest(SimpleTestCase):
    """Test verdict flags and margins."""

    def test_flags(self):
        """Test a value above both thresholds sets both flags."""
        verdict = DetectionVerdict(0.9, 0.5, 5 / 6)
        self.assertTrue(verdict.entangled)
        self.assertTrue(verdict.tripartite)
        self.assertAlmostEqual(verdict.bisep_margin, 0.9 - 5 / 6)

    def test_below_thresholds(self):
        """Test a value below both thresholds sets neither flag."""
        verdict = DetectionVerdict(0.4, 0.5, 5 / 6)
        self.assertFalse(verdict.entangled)
        self.assertFalse(verdict.tripartite)

    def test_no_tripartite_flag_for_other_party_counts(self):
        """Test four parties get no tripartite threshold."""
        rho = ghz(2, 4)
        verdict = judge(1.0, rho.layout, 2, registry={})
        self.assertTrue(verdict.entangled)
        self.assertFalse(verdict.tripartite)
        self.assertIsNone(verdict.bisep_threshold)

    def test_mum_thresholds_used(self):
        """Test κ switches to the MUM thresholds."""
        verdict = judge(0.5, ghz(2, 3).layout, 3, kappa=1.0, registry={})
        self.assertAlmostEqual(verdict.sep_threshold, 1 - np.log2(1.5), places=12)

    def test_serializer(self):
        """Test the verdict serializer exposes flags and margins."""
        data = DetectionVerdictSerializer(DetectionVerdict(1.0, 0.5, 5 / 6)).data
        self.assertTrue(data["tripartite"])
        self.assertAlmostEqual(data["sep_margin"], 0.5)


class NoiseScanTest(SimpleTestCase):
    """Test scans over white-noise levels."""

    def test_ghz_qubits_scan(self):
        """Test the GHZ_2,3 scan stops detecting near 6%."""
        grid = [round(0.002 * i, 10) for i in range(51)]
        rows = noise_scan(StateSpec("ghz", {"d": 2, "n": 3}), grid, 2, registry={})
        self.assertEqual([row["p"] for row in rows], grid)
        self.assertTrue(rows[0]["tripartite"])
        self.assertAlmostEqual(first_undetected(rows), 0.060, delta=0.002)
        self.assertTrue(all(row["entangled"] for row in rows))

    def test_analytic_scan_matches_dense(self):
        """Test the closed-form scan matches the dense one."""
        grid = [0.0, 0.05, 0.1]
        spec = StateSpec("ghz", {"d": 3, "n": 3})
        analytic = noise_scan(spec, grid, 4, setting="analytic", registry={})
        dense = noise_scan(spec, grid, 4, registry={})
        for a, b in zip(analytic, dense):
            self.assertAlmostEqual(a["c_value"], b["c_value"], delta=1e-9)
            self.assertEqual(a["tripartite"], b["tripartite"])
        self.assertEqual(first_undetected(analytic), 0.1)

    def test_analytic_large_dimension(self):
        """Test the closed form handles d = 1000."""
        rows = noise_scan(
            StateSpec("ghz", {"d": 1000, "n": 3}), [0.0, 0.2], 2, setting="analytic", registry={}
        )
        self.assertTrue(rows[0]["tripartite"])
        self.assertFalse(rows[1]["tripartite"])

    def test_aharonov_j4_scan(self):
        """Test the J_4 scan of noisy S_3 stops detecting just above 9/14."""
        grid = [round(0.6 + 0.01 * i, 10) for i in range(10)]
        rows = noise_scan(StateSpec("aharonov", {"d": 3}), grid, 4, measure="j")
        self.assertEqual(first_undetected(rows), 0.65)
        self.assertAlmostEqual(first_undetected(rows), 0.643, delta=0.01)
        for row in rows:
            self.assertAlmostEqual(row["c_value"], j_n_noisy_aharonov(row["p"], 4), places=9)
            self.assertEqual(row["bisep_threshold"], 2.0)
            self.assertEqual(row["setting"], "j:pauli")
            self.assertEqual(row["measure"], "j")

    def test_aharonov_j4_analytic_scan(self):
        """Test the closed-form J_4 scan over the full noise range."""
        grid = [round(0.01 * i, 10) for i in range(101)]
        rows = noise_scan(StateSpec("aharonov", {"d": 3}), grid, 4, setting="analytic", measure="j")
        self.assertEqual(len(rows), 101)
        self.assertAlmostEqual(rows[0]["c_value"], 4.0, places=12)
        self.assertAlmostEqual(rows[-1]["c_value"], 8 / 9, places=12)
        self.assertEqual(first_undetected(rows), 0.65)
        self.assertTrue(all(row["entangled"] == row["tripartite"] for row in rows))

    def test_j_measure_domain(self):
        """Test J_N scans reject MUM settings, other closed forms and unknown measures."""
        spec = StateSpec("aharonov", {"d": 3})
        with self.assertRaises(InvalidParameterError):
            noise_scan(spec, [0.0], 4, kappa=1.0, measure="j")
        with self.assertRaises(InvalidParameterError):
            noise_scan(spec, [0.0], 4, measure="q")
        with self.assertRaises(UnsupportedDomainError):
            noise_scan(StateSpec("ghz", {"d": 3}), [0.0], 4, setting="analytic", measure="j")

    def test_analytic_needs_closed_form(self):
        """Test the analytic path needs a closed form."""
        with self.assertRaises(UnsupportedDomainError):
            noise_scan(StateSpec("w", {}), [0.0], 2, setting="analytic", registry={})

    def test_unknown_setting(self):
        """Test an unknown setting policy is rejected."""
        with self.assertRaises(InvalidParameterError):
            noise_scan(StateSpec("ghz", {}), [0.0], 2, setting="best")

    def test_grid_range(self):
        """Test noise levels outside [0, 1] are rejected."""
        with self.assertRaises(InvalidParameterError):
            noise_scan(StateSpec("ghz", {}), [0.0, 1.2], 2)

    def test_first_undetected_none(self):
        """Test a fully detected scan has no undetected level."""
        self.assertIsNone(first_undetected([{"p": 0.0, "tripartite": True}]))

    def test_csv(self):
        """Test the CSV header and row formatting."""
        rows = noise_scan(StateSpec("ghz", {"d": 2, "n": 3}), [0.0, 0.5], 2, registry={})
        handle = io.StringIO()
        write_csv(rows, handle)
        lines = handle.getvalue().splitlines()
        self.assertEqual(
            lines[0],
            "p,d,N,c_value,sep_threshold,bisep_threshold,entangled,tripartite,setting,seed",
        )
        self.assertEqual(
            lines[1].split(","),
            ["0", "2", "2", "1", "0.5", "0.833333333333", "true", "true", "pauli", ""],
        )
        self.assertEqual(len(lines), 3)
