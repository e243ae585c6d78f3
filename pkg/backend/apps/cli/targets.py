"""Row builders for ``manage.py reproduce``: threshold table and figure data."""

import logging

import numpy as np

from apps.common.concurrency import run_parallel
from apps.common.exceptions import InvalidParameterError, UnsupportedDomainError
from apps.corr.measures import c_n_given, q_basis
from apps.corr.optimize import c_n_optimize
from apps.corr.setting import pauli_setting
from apps.detect.bounds import bisep_threshold, f_bound, sep_threshold
from apps.detect.noisy import p_max, r_quantity
from apps.mub.construct import standard_mub_set
from apps.states.catalog import ghz_mes, qutrit_mes
from apps.states.families import three_tangle

logger = logging.getLogger(__name__)

TABLE1_COLUMNS = (
    "kind",
    "N",
    "d",
    "value",
    "value_over_log2d",
    "provenance",
    "registry_value",
    "registry_over_log2d",
    "note",
)
FIG1_COLUMNS = ("x", "c_value", "q_x", "q_z", "q_y", "tau3", "c_optimized")
FIG2_COLUMNS = ("x", "c_value", "q_z", "q_x", "q_xz", "q_xzz", "c_optimized")
FIG4_COLUMNS = ("d", "p", "r")
FIG5_COLUMNS = ("d", "p_max")

FIG4_DIMS = (3, 6, 12, 24, 48)

TABLE1_NOTES = {
    ("sep", 4, 3): (
        "the often quoted 0.366 log2(3) is not reproduced; the Wehner bound gives 0.369 log2(3)"
    ),
}


def table1_rows(registry=None):
    """Separable and biseparable ceilings of C_N for three qubits and three qutrits."""
    thresholds = {"sep": sep_threshold, "bisep": bisep_threshold}
    rows = []
    for kind, threshold in thresholds.items():
        for N in (2, 3, 4):
            for d in (2, 3):
                row = {"kind": kind, "N": N, "d": d, "note": TABLE1_NOTES.get((kind, N, d), "")}
                try:
                    value = threshold(N, d, {})
                except UnsupportedDomainError:
                    row["note"] = f"at most {d + 1} MUBs in dimension {d}"
                    rows.append(row)
                    continue
                row.update(
                    value=value,
                    value_over_log2d=value / np.log2(d),
                    provenance=f_bound(N, d, {}).provenance,
                )
                if registry:
                    strengthened = threshold(N, d, registry)
                    row.update(
                        registry_value=strengthened,
                        registry_over_log2d=strengthened / np.log2(d),
                    )
                rows.append(row)
    return rows


def _mes_rows(build, grid, bases, N, extras=None, workers=None, optimize=False, **optimizer):
    """Per-x C_N, per-basis Q values, ``extras`` and optional optimized C_N for one MES family."""

    def evaluate(x):
        try:
            psi = build(x)
        except InvalidParameterError as exc:
            logger.warning("Skipping x=%s outside the family domain: %s", x, exc.detail)
            return None
        row = {
            "x": x,
            "c_value": c_n_given(psi, pauli_setting(psi.layout, N)).c_value,
        }
        for name, basis in bases.items():
            row[name] = q_basis(psi, [basis] * psi.layout.n)["value"]
        for name, fn in (extras or {}).items():
            row[name] = fn(psi)
        if optimize:
            report = c_n_optimize(psi, N, workers=1, **optimizer)
            row["c_optimized"] = report.c_value
        return row

    return [row for row in run_parallel(evaluate, grid, workers) if row is not None]


def fig1_rows(grid, workers=None, **optimizer):
    """ψ_GHZ((x,x,x); 1): C_2, Q in the x, z and y bases, and the three-tangle."""
    z_basis, x_basis, y_basis = standard_mub_set(2, 3).bases
    return _mes_rows(
        lambda x: ghz_mes((x, x, x), 1.0),
        grid,
        {"q_x": x_basis, "q_z": z_basis, "q_y": y_basis},
        2,
        extras={"tau3": three_tangle},
        workers=workers,
        **optimizer,
    )


def fig2_rows(grid, workers=None, **optimizer):
    """ψ((x,x,x); (1,0); 1,0,0): C_4 and Q in the Z, X, XZ and XZ² bases."""
    z_basis, x_basis, xz_basis, xzz_basis = standard_mub_set(3, 4).bases
    return _mes_rows(
        lambda x: qutrit_mes((x, x, x), (1, 0), 1.0, 0.0, 0.0),
        grid,
        {"q_z": z_basis, "q_x": x_basis, "q_xz": xz_basis, "q_xzz": xzz_basis},
        4,
        workers=workers,
        **optimizer,
    )


def fig4_rows(grid, dims=FIG4_DIMS):
    return [{"d": d, "p": p, "r": r_quantity(p, d)} for d in dims for p in grid]


def fig5_dims(dmin, dmax, points):
    """Log-spaced integer dimensions from dmin to dmax, duplicates removed."""
    if dmin < 2 or dmax < dmin or points < 1:
        raise InvalidParameterError(
            f"Need 2 <= dmin <= dmax and points >= 1, got {dmin}, {dmax}, {points}.", code="dims"
        )
    return [int(d) for d in np.unique(np.rint(np.geomspace(dmin, dmax, points)).astype(int))]


def fig5_rows(dmin=3, dmax=1000, points=40, workers=None):
    dims = fig5_dims(dmin, dmax, points)
    values = run_parallel(p_max, dims, workers)
    return [{"d": d, "p_max": value} for d, value in zip(dims, values)]
