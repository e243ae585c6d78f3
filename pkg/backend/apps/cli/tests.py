"""Tests for the management commands."""

import csv
import io
import json
import tempfile
from pathlib import Path
from unittest import mock

import numpy as np
from django.conf import settings
from django.core.management import CommandError, call_command
from django.test import SimpleTestCase

from apps.common.exceptions import InvalidParameterError
from apps.qstate.serializers import StateSerializer
from apps.states.catalog import phi_plus

from .options import parse_grid


def run(name, *args, **options):
    """Call a command and return (stdout, stderr)."""
    out, err = io.StringIO(), io.StringIO()
    call_command(name, *args, stdout=out, stderr=err, **options)
    return out.getvalue(), err.getvalue()


def read_csv(text):
    return list(csv.DictReader(io.StringIO(text)))


class ParseGridTest(SimpleTestCase):
    """Test the start:stop:step grid syntax."""

    def test_inclusive(self):
        """Test both endpoints are included."""
        grid = parse_grid("0:0.1:0.002")
        self.assertEqual(len(grid), 51)
        self.assertEqual(grid[0], 0.0)
        self.assertEqual(grid[-1], 0.1)
        self.assertEqual(grid[30], 0.06)

    def test_single_value(self):
        """Test a single number is a one-point grid."""
        self.assertEqual(parse_grid("0.25"), [0.25])

    def test_stop_off_lattice(self):
        """Test an off-lattice stop is appended after the last lattice point."""
        self.assertEqual(parse_grid("0:0.1:0.04"), [0.0, 0.04, 0.08, 0.1])

    def test_no_interval_longer_than_step(self):
        """Test the point below an off-lattice stop is kept."""
        grid = parse_grid("0:0.49:0.03")
        self.assertEqual(grid[-2:], [0.48, 0.49])
        self.assertEqual(len(grid), 18)
        self.assertLessEqual(max(np.diff(grid)), 0.03 + 1e-12)

    def test_stop_on_lattice(self):
        """Test a stop reached by the lattice is not duplicated."""
        self.assertEqual(parse_grid("0:1:0.25"), [0.0, 0.25, 0.5, 0.75, 1.0])
        self.assertEqual(parse_grid("0.5:0.5:0.1"), [0.5])

    def test_bad_grids(self):
        """Test malformed grids are rejected."""
        for text in ("0:1", "a:b:c", "0:1:0", "1:0:0.1"):
            with self.assertRaises(InvalidParameterError):
                parse_grid(text)


class ComputeCommandTest(SimpleTestCase):
    """Test ``compute`` and ``optimize``."""

    def test_ghz_pauli(self):
        """Test GHZ_2,3 reaches 1 and is flagged as tripartite."""
        out, err = run("compute", state="ghz", d=2, n=3, N=2)
        payload = json.loads(out)
        self.assertAlmostEqual(payload["c_value"], 1.0, places=9)
        self.assertTrue(payload["verdict"]["tripartite"])
        self.assertIn("lower bound", err)

    def test_csv_row(self):
        """Test the CSV report row."""
        out, _ = run("compute", state="ghz", d=2, n=3, N=2, format="csv")
        rows = read_csv(out)
        self.assertEqual(len(rows), 1)
        self.assertEqual(rows[0]["measure"], "C_2")
        self.assertEqual(rows[0]["value"], "1")
        self.assertEqual(rows[0]["setting"], "pauli")
        self.assertEqual(rows[0]["seed"], "")

    def test_w_pauli_below_optimum(self):
        """Test the Z/X setting stays below the optimum for W."""
        out, _ = run("compute", state="w", N=2)
        self.assertLess(json.loads(out)["c_value"], 0.685)

    def test_noise(self):
        """Test full white noise gives zero correlation."""
        out, _ = run("compute", state="ghz", d=2, n=3, N=2, p=1.0)
        self.assertAlmostEqual(json.loads(out)["c_value"], 0.0, places=9)

    def test_state_file(self):
        """Test a JSON state file is read."""
        with tempfile.TemporaryDirectory() as directory:
            path = Path(directory) / "state.json"
            path.write_text(json.dumps(StateSerializer(phi_plus(3)).data), encoding="utf-8")
            out, _ = run("compute", state_file=str(path), N=2)
        self.assertAlmostEqual(json.loads(out)["c_value"], np.log2(3), places=9)

    def test_bad_state_file(self):
        """Test a state document without amplitudes exits with 2."""
        with tempfile.TemporaryDirectory() as directory:
            path = Path(directory) / "bad.json"
            path.write_text(json.dumps({"dims": [2, 2], "kind": "pure"}), encoding="utf-8")
            with self.assertRaises(CommandError) as ctx:
                run("compute", state_file=str(path))
        self.assertEqual(ctx.exception.returncode, 2)

    def test_not_json(self):
        """Test a file that is not JSON exits with 2."""
        with tempfile.TemporaryDirectory() as directory:
            path = Path(directory) / "bad.json"
            path.write_text("{not json", encoding="utf-8")
            with self.assertRaises(CommandError) as ctx:
                run("compute", state_file=str(path))
        self.assertEqual(ctx.exception.returncode, 2)

    def test_unknown_parameter(self):
        """Test a family flag the family does not take exits with 2."""
        with self.assertRaises(CommandError) as ctx:
            run("compute", state="w", d=3)
        self.assertEqual(ctx.exception.returncode, 2)

    def test_unsupported_domain(self):
        """Test three bases in dimension 4 exit with 3."""
        with self.assertRaises(CommandError) as ctx:
            run("compute", state="ghz", d=4, n=3, N=3)
        self.assertEqual(ctx.exception.returncode, 3)
        self.assertEqual(json.loads(str(ctx.exception))["code"], "UNSUPPORTED_DOMAIN")

    def test_linear_algebra_failure(self):
        """Test a LinAlgError exits with the numerical failure code."""
        failure = np.linalg.LinAlgError("SVD did not converge")
        with mock.patch("apps.cli.management.commands.compute.c_n_given", side_effect=failure):
            with self.assertRaises(CommandError) as ctx:
                run("compute", state="ghz", d=2, n=3, N=2)
        self.assertEqual(ctx.exception.returncode, 4)
        payload = json.loads(str(ctx.exception))
        self.assertEqual(payload["code"], "linalg")
        self.assertIn("SVD did not converge", payload["detail"])

    def test_mum_mode(self):
        """Test the complete MUM setting at κ = 1."""
        out, _ = run("compute", state="ghz", d=2, n=3, N=3, kappa=1.0)
        payload = json.loads(out)
        self.assertAlmostEqual(payload["c_value"], 2 / 3, places=9)
        self.assertAlmostEqual(payload["verdict"]["sep_threshold"], 1 - np.log2(1.5), places=9)

    def test_mum_mode_needs_complete_set(self):
        """Test MUM mode needs N = d+1."""
        with self.assertRaises(CommandError) as ctx:
            run("compute", state="ghz", d=2, n=3, N=2, kappa=1.0)
        self.assertEqual(ctx.exception.returncode, 2)

    def test_j_measure(self):
        """Test J_4 of S_3 reaches 4 and is detected."""
        out, _ = run("compute", state="aharonov", d=3, N=4, measure="j")
        payload = json.loads(out)
        self.assertAlmostEqual(payload["value"], 4.0, places=9)
        self.assertTrue(payload["detected"])

    def test_optimize(self):
        """Test ``optimize`` reports the seed and a value of at least 1 for φ+."""
        out, _ = run(
            "optimize", state="phi_plus", d=2, N=2, restarts=2, max_iters=200, format="csv"
        )
        row = read_csv(out)[0]
        self.assertGreaterEqual(float(row["value"]), 1.0 - 1e-6)
        self.assertEqual(row["setting"], "optimize")
        self.assertEqual(row["seed"], "0")

    def test_out_file(self):
        """Test ``--out`` writes the report to a file."""
        with tempfile.TemporaryDirectory() as directory:
            path = Path(directory) / "report.json"
            out, _ = run("compute", state="ghz", d=3, n=3, N=2, out=str(path))
            payload = json.loads(path.read_text(encoding="utf-8"))
        self.assertEqual(out, "")
        self.assertAlmostEqual(payload["c_value"], np.log2(3), places=9)


class DetectCommandTest(SimpleTestCase):
    """Test ``detect`` and ``pmax``."""

    def test_ghz_qubits(self):
        """Test the GHZ_2,3 scan and its first undetected noise level."""
        out, err = run("detect", state="ghz", d=2, n=3, N=2, noise="0:0.1:0.002")
        rows = read_csv(out)
        self.assertEqual(len(rows), 51)
        self.assertEqual(rows[0]["tripartite"], "true")
        self.assertIn("first undetected p (tripartite): 0.06", err)

    def test_analytic_qutrits(self):
        """Test the closed-form GHZ_3,3 scan for four bases."""
        out, err = run("detect", state="ghz", d=3, n=3, N=4, noise="0:0.1:0.001", analytic=True)
        self.assertIn("first undetected p (tripartite): 0.084", err)
        self.assertEqual(read_csv(out)[0]["setting"], "analytic")

    def test_json(self):
        """Test JSON output lists the rows in grid order."""
        out, _ = run("detect", state="ghz", d=2, n=3, N=2, noise="0:0.02:0.01", format="json")
        self.assertEqual([row["p"] for row in json.loads(out)["rows"]], [0.0, 0.01, 0.02])

    def test_entangled_flag_for_two_parties(self):
        """Test two-party states report the entangled flag."""
        _, err = run("detect", state="phi_plus", d=2, N=2, noise="0:1:0.25")
        self.assertIn("first undetected p (entangled)", err)

    def test_j_measure_scan(self):
        """Test ``--measure j`` scores J_4 of noisy S_3 against 1 + (N-1)/d."""
        out, err = run("detect", state="aharonov", d=3, N=4, measure="j", noise="0:1:0.01")
        rows = read_csv(out)
        self.assertEqual(len(rows), 101)
        self.assertEqual(rows[0]["c_value"], "4")
        self.assertEqual(rows[0]["bisep_threshold"], "2")
        self.assertEqual(rows[0]["setting"], "j:pauli")
        self.assertIn("first undetected p (tripartite): 0.65", err)

    def test_j_measure_scan_analytic(self):
        """Test the closed-form J_4 path agrees with the dense scan."""
        _, err = run(
            "detect", state="aharonov", d=3, N=4, measure="j", analytic=True, noise="0:1:0.01"
        )
        self.assertIn("first undetected p (tripartite): 0.65", err)

    def test_bad_noise(self):
        """Test a grid beyond p = 1 exits with 2."""
        with self.assertRaises(CommandError) as ctx:
            run("detect", state="ghz", d=2, n=3, noise="0:1.5:0.5")
        self.assertEqual(ctx.exception.returncode, 2)

    def test_deterministic(self):
        """Test the output does not depend on the worker count."""
        first, _ = run("detect", state="ghz", d=2, n=3, noise="0:0.1:0.01", workers=2)
        second, _ = run("detect", state="ghz", d=2, n=3, noise="0:0.1:0.01", workers=1)
        self.assertEqual(first, second)

    def test_pmax(self):
        """Test the noise tolerance for d = 3 and d = 12."""
        out, _ = run("pmax", d=[3, 12])
        rows = read_csv(out)
        self.assertAlmostEqual(float(rows[0]["p_max"]), 0.0709, delta=5e-4)
        self.assertAlmostEqual(float(rows[1]["p_max"]), 0.1017, delta=5e-4)


class ReproduceCommandTest(SimpleTestCase):
    """Test ``reproduce`` targets."""

    def test_table1(self):
        """Test the threshold table without a registry."""
        rows = read_csv(run("reproduce", "table1")[0])
        self.assertEqual(len(rows), 12)
        cells = {(row["kind"], row["N"], row["d"]): row for row in rows}
        self.assertEqual(cells[("sep", "3", "2")]["value"], "0.333333333333")
        self.assertEqual(cells[("bisep", "2", "2")]["value"], "0.833333333333")
        self.assertEqual(cells[("sep", "4", "2")]["value"], "")
        self.assertIn("0.366", cells[("sep", "4", "3")]["note"])
        self.assertEqual(cells[("sep", "3", "3")]["registry_value"], "")

    def test_table1_with_registry(self):
        """Test the registry column for three qutrit bases."""
        path = settings.BASE_DIR / "data" / "bounds.yaml"
        rows = read_csv(run("reproduce", "table1", bounds_file=str(path))[0])
        cells = {(row["kind"], row["N"], row["d"]): row for row in rows}
        sep = float(cells[("sep", "3", "3")]["registry_over_log2d"])
        bisep = float(cells[("bisep", "3", "3")]["registry_over_log2d"])
        self.assertAlmostEqual(sep, 0.369, delta=1e-3)
        self.assertAlmostEqual(bisep, 0.790, delta=1e-3)

    def test_fig1(self):
        """Test the ψ_GHZ figure data."""
        rows = read_csv(run("reproduce", "fig1", grid="0:0.5:0.01")[0])
        self.assertEqual(len(rows), 50)
        q_y = [float(row["q_y"]) for row in rows]
        self.assertEqual(rows[int(np.argmax(q_y))]["x"], "0.25")
        self.assertEqual(rows[0]["tau3"], "1")

    def test_fig2(self):
        """Test the qutrit family figure data."""
        rows = read_csv(run("reproduce", "fig2", grid="0:0.3:0.05")[0])
        c_values = [float(row["c_value"]) for row in rows]
        self.assertAlmostEqual(c_values[0], np.log2(3), places=9)
        self.assertTrue(np.all(np.diff(c_values) < 0))
        for row in rows:
            self.assertAlmostEqual(float(row["q_xz"]), float(row["q_xzz"]), places=9)

    def test_fig4(self):
        """Test R(p; d) rows are grouped by dimension."""
        rows = read_csv(run("reproduce", "fig4", grid="0:0.1:0.05", dims=[3, 6])[0])
        self.assertEqual(len(rows), 6)
        self.assertEqual(
            [(row["d"], row["p"]) for row in rows[:3]], [("3", "0"), ("3", "0.05"), ("3", "0.1")]
        )
        self.assertEqual(rows[0]["r"], "1.2")

    def test_fig5(self):
        """Test the p_max sweep over large dimensions."""
        rows = read_csv(run("reproduce", "fig5", dmin=3, dmax=1000, points=40)[0])
        values = [float(row["p_max"]) for row in rows]
        self.assertEqual(rows[0]["d"], "3")
        self.assertEqual(rows[-1]["d"], "1000")
        self.assertTrue(np.all(np.diff(values) > 0))
        self.assertAlmostEqual(values[0], 0.0709, delta=5e-4)
        self.assertLess(values[-1], 1 / 6 + 1e-3)

    def test_unknown_target(self):
        """Test an unknown target is rejected."""
        with self.assertRaises(CommandError):
            run("reproduce", "fig3")


class CertifyCommandTest(SimpleTestCase):
    """Test ``certify`` and ``check_lemma1``."""

    def test_certified(self):
        """Test GHZ_3,3 is certified for two bases."""
        payload = json.loads(run("certify", state="ghz", d=3, n=3, N=2)[0])
        self.assertTrue(payload["certified"])
        self.assertAlmostEqual(payload["c_value"], np.log2(3), places=9)

    def test_psi33(self):
        """Test Ψ_3,3 is certified with exponent 1 on every site."""
        payload = json.loads(run("certify", state="psi33", a="1", b="0.5+0.5j", c="-2", N=4)[0])
        self.assertEqual(payload["exponents"], [[1, 1, 1]] * 4)

    def test_not_certified(self):
        """Test W prints its certificate and exits with 4."""
        out = io.StringIO()
        with self.assertRaises(CommandError) as ctx:
            call_command("certify", state="w", N=2, stdout=out, stderr=io.StringIO())
        self.assertEqual(ctx.exception.returncode, 4)
        payload = json.loads(out.getvalue())
        self.assertFalse(payload["certified"])
        self.assertEqual(payload["code"], "MARGINALS_NOT_MIXED")

    def test_lemma1(self):
        """Test φ+ in dimension 3 decomposes."""
        payload = json.loads(run("check_lemma1", state="phi_plus", d=3)[0])
        self.assertTrue(payload["decomposable"])
        self.assertEqual(payload["split"], [3, 3])

    def test_lemma1_site_cut(self):
        """Test the cut of site 0 from GHZ_2,3."""
        payload = json.loads(run("check_lemma1", state="ghz", d=2, n=3, site=0)[0])
        self.assertEqual(payload["split"], [4, 2])

    def test_lemma1_fails(self):
        """Test the cut of site 1 from W fails with exit 4."""
        with self.assertRaises(CommandError) as ctx:
            run("check_lemma1", state="w", site=1)
        self.assertEqual(ctx.exception.returncode, 4)

    def test_all_cuts(self):
        """Test every cut of the AME reduction passes."""
        payload = json.loads(run("check_lemma1", state="ame_abc", all_cuts=True)[0])
        self.assertEqual(payload["cuts"], [True, True, True])
        self.assertTrue(payload["may_be_maximal"])
