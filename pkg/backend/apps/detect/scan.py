"""Detection verdicts and white-noise scans over catalog states."""

import csv
import logging
from dataclasses import dataclass, replace

from apps.common.concurrency import run_parallel
from apps.common.conf import get_setting
from apps.common.exceptions import (
    DimensionMismatchError,
    InvalidParameterError,
    UnsupportedDomainError,
)
from apps.common.validators import validate_probability
from apps.corr.measures import c_n_given, j_n_value
from apps.corr.optimize import c_n_optimize, j_n_optimize
from apps.corr.setting import mum_setting, pauli_setting
from apps.mub.construct import standard_mub_set
from apps.qstate.types import SubsystemLayout
from apps.states.catalog import catalog_state

from .bounds import bisep_threshold, j_n_bisep_bound, mum_thresholds, sep_threshold
from .noisy import ghz33_noise_cn, j_n_noisy_aharonov, noisy_ghz_c2

logger = logging.getLogger(__name__)

CSV_COLUMNS = (
    "p",
    "d",
    "N",
    "c_value",
    "sep_threshold",
    "bisep_threshold",
    "entangled",
    "tripartite",
    "setting",
    "seed",
)

SETTINGS = ("pauli", "optimize", "analytic")
MEASURES = ("c", "j")


@dataclass(frozen=True)
class DetectionVerdict:
    c_value: float
    sep_threshold: float
    bisep_threshold: float = None

    @property
    def entangled(self):
        return self.c_value > self.sep_threshold

    @property
    def tripartite(self):
        return self.bisep_threshold is not None and self.c_value > self.bisep_threshold

    @property
    def sep_margin(self):
        return self.c_value - self.sep_threshold

    @property
    def bisep_margin(self):
        if self.bisep_threshold is None:
            return None
        return self.c_value - self.bisep_threshold


def thresholds_for(layout, N, kappa=None, registry=None):
    """(sep, bisep) for a uniform layout; bisep only for three parties."""
    if not layout.is_uniform():
        raise DimensionMismatchError(
            f"Thresholds need equal local dimensions, got {layout.dims}.", code="uniform_dims"
        )
    d = layout.dims[0]
    if kappa is not None:
        if N != d + 1:
            raise InvalidParameterError(
                f"MUM thresholds need the complete set N = {d + 1}, got {N}.", code="N_range"
            )
        sep, bisep = mum_thresholds(d, kappa)
    else:
        sep, bisep = sep_threshold(N, d, registry), bisep_threshold(N, d, registry)
    return sep, (bisep if layout.n == 3 else None)


def judge(c_value, layout, N, kappa=None, registry=None):
    sep, bisep = thresholds_for(layout, N, kappa, registry)
    return DetectionVerdict(float(c_value), sep, bisep)


def judge_j(j_value, layout, N):
    """J_N against 1 + (N-1)/d; the same bound covers fully separable states."""
    bound = j_n_bisep_bound(N, layout.dims[0])
    return DetectionVerdict(float(j_value), bound, bound if layout.n == 3 else None)


def analytic_c_value(spec, p, N):
    """Closed-form C_N for noisy three-party GHZ, without building the state."""
    params = spec.params
    d, n = int(params.get("d", 2)), int(params.get("n", 3))
    if spec.family != "ghz" or n != 3:
        raise UnsupportedDomainError(
            "The analytic path covers three-party GHZ states only.", code="no_closed_form"
        )
    if d == 3:
        return ghz33_noise_cn(p, N)
    if N == 2:
        return noisy_ghz_c2(p, d)
    raise UnsupportedDomainError(
        f"No closed form for GHZ_{d},3 with N = {N}.", code="no_closed_form"
    )


def analytic_j_value(spec, p, N):
    if spec.family != "aharonov":
        raise UnsupportedDomainError(
            "The analytic J_N path covers Aharonov states only.", code="no_closed_form"
        )
    return j_n_noisy_aharonov(p, N, int(spec.params.get("d", 3)))


def _analytic_layout(spec, measure):
    d = int(spec.params.get("d", 2 if measure == "c" else 3))
    n = d if measure == "j" else int(spec.params.get("n", 3))
    return SubsystemLayout((d,) * n)


def noise_scan(
    spec,
    grid,
    N,
    setting="pauli",
    kappa=None,
    restarts=None,
    seed=None,
    max_iters=None,
    workers=None,
    registry=None,
    measure="c",
):
    """One CSV row per noise level p, in grid order.

    ``measure="j"`` scores J_N instead of C_N; its value lands in the ``c_value``
    column and both threshold columns carry 1 + (N-1)/d.
    """
    if setting not in SETTINGS:
        raise InvalidParameterError(f"Unknown setting policy '{setting}'.", code="setting")
    if measure not in MEASURES:
        raise InvalidParameterError(f"Unknown measure '{measure}'.", code="measure")
    grid = [validate_probability(p) for p in grid]
    if setting == "analytic":
        layout = _analytic_layout(spec, measure)
    else:
        layout = catalog_state(replace(spec, p=None)).layout
    if kappa is not None and (setting != "pauli" or measure != "c"):
        raise InvalidParameterError("MUM scans use the fixed MUM setting.", code="setting")
    effective_seed = seed if seed is not None else get_setting("OPTIMIZER")["SEED"]
    mub_set = None
    if measure == "j" and setting == "pauli":
        mub_set = standard_mub_set(layout.dims[0], N)

    def evaluate_c(p):
        if setting == "analytic":
            return analytic_c_value(spec, p, N)
        state = catalog_state(replace(spec, p=p))
        if kappa is not None:
            return c_n_given(state, mum_setting(layout, kappa)).c_value
        if setting == "optimize":
            return c_n_optimize(
                state, N, restarts=restarts, seed=effective_seed, max_iters=max_iters, workers=1
            ).c_value
        return c_n_given(state, pauli_setting(layout, N)).c_value

    def evaluate_j(p):
        if setting == "analytic":
            return analytic_j_value(spec, p, N)
        state = catalog_state(replace(spec, p=p))
        if setting == "optimize":
            return j_n_optimize(
                state, N, restarts=restarts, seed=effective_seed, max_iters=max_iters, workers=1
            )["value"]
        return j_n_value(state, mub_set)

    def evaluate(p):
        if measure == "j":
            verdict = judge_j(evaluate_j(p), layout, N)
        else:
            verdict = judge(evaluate_c(p), layout, N, kappa, registry)
        if kappa is not None:
            label = f"mum:{kappa}"
        else:
            label = setting if measure == "c" else f"j:{setting}"
        return {
            "p": p,
            "d": layout.dims[0],
            "N": N,
            "c_value": verdict.c_value,
            "sep_threshold": verdict.sep_threshold,
            "bisep_threshold": verdict.bisep_threshold,
            "entangled": verdict.entangled,
            "tripartite": verdict.tripartite,
            "setting": label,
            "seed": effective_seed if setting == "optimize" else "",
            "measure": measure,
        }

    rows = run_parallel(evaluate, grid, workers)
    logger.info("Scanned %s (%s) over %d noise levels", spec.family, measure, len(rows))
    return rows


def first_undetected(rows, flag="tripartite"):
    """Smallest p whose row is not flagged, or None."""
    for row in rows:
        if not row[flag]:
            return row["p"]
    return None


def format_value(value, digits=None):
    digits = get_setting("CSV_DIGITS") if digits is None else digits
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return f"{value:.{digits}g}"
    return str(value)


def write_csv(rows, handle, columns=CSV_COLUMNS):
    """Fixed column order, floats at CSV_DIGITS significant digits."""
    writer = csv.writer(handle, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow([format_value(row.get(column)) for column in columns])
