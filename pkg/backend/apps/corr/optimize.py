"""Lower bounds on 𝒞_N and J_N by optimizing local rotations of the standard MUB set.

Each site's rotation is U = exp(iΣ_a θ_a G_a) over the d² Hermitian generators
{I/√d} ∪ Gell-Mann. Nelder-Mead runs from ``restarts`` starting points (the
first one is the unrotated Pauli setting) and the best value is kept, so the
result is a lower bound on the true maximum.
"""

import logging
from dataclasses import asdict, dataclass
from functools import lru_cache

import numpy as np
from scipy.linalg import expm
from scipy.optimize import minimize

from apps.common.concurrency import run_parallel
from apps.common.conf import get_setting
from apps.mub.construct import standard_mub_set
from apps.mub.pauli import gell_mann_basis

from .distribution import joint_distribution
from .measures import antisymmetric_weight, c_n_given, check_j_layout, site_informations
from .setting import pauli_setting

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class OptimizerConfig:
    restarts: int
    seed: int
    max_iters: int
    tol: float
    workers: int = None

    @classmethod
    def resolve(cls, **overrides):
        """Settings defaults overridden by any non-None keyword."""
        defaults = get_setting("OPTIMIZER")
        values = {
            "restarts": defaults["RESTARTS"],
            "seed": defaults["SEED"],
            "max_iters": defaults["MAX_ITERS"],
            "tol": defaults["TOL"],
            "workers": None,
        }
        values.update({key: value for key, value in overrides.items() if value is not None})
        return cls(**values)


@lru_cache(maxsize=None)
def unitary_generators(d):
    return np.array([np.eye(d, dtype=complex) / np.sqrt(d)] + gell_mann_basis(d))


def unitaries_from_params(theta, dims):
    unitaries, offset = [], 0
    for d in dims:
        chunk = theta[offset : offset + d * d]
        unitaries.append(expm(1j * np.tensordot(chunk, unitary_generators(d), axes=1)))
        offset += d * d
    return unitaries


def _starting_points(size, config):
    children = np.random.SeedSequence(config.seed).spawn(config.restarts)
    starts = [np.zeros(size)]
    for child in children[1:]:
        starts.append(np.random.default_rng(child).normal(scale=np.pi / 2, size=size))
    return starts


def _maximize(objective, size, config, label):
    """Run every restart and return (best theta, best value, metadata)."""

    def run(indexed_start):
        index, start = indexed_start
        result = minimize(
            lambda theta: -objective(theta),
            start,
            method="Nelder-Mead",
            options={
                "maxiter": config.max_iters,
                "xatol": 1e-7,
                "fatol": config.tol,
                "adaptive": True,
            },
        )
        logger.debug("%s restart %d: value=%.10f nit=%d", label, index, -result.fun, result.nit)
        return result

    results = run_parallel(run, list(enumerate(_starting_points(size, config))), config.workers)
    values = [-r.fun for r in results]
    best_index = int(np.argmax(values))
    best = results[best_index]
    logger.info("%s best value %.10f over %d restarts", label, values[best_index], config.restarts)
    metadata = {
        **asdict(config),
        "best_restart": best_index,
        "iterations": int(best.nit),
        "converged": bool(best.success),
        "lower_bound": True,
    }
    return best.x, values[best_index], metadata


def c_n_optimize(state, N, restarts=None, seed=None, max_iters=None, tol=None, workers=None):
    """Best C_N over per-site rotations of the standard set; a lower bound on 𝒞_N."""
    config = OptimizerConfig.resolve(
        restarts=restarts, seed=seed, max_iters=max_iters, tol=tol, workers=workers
    )
    layout = state.layout
    base = pauli_setting(layout, N)
    vectors = [[b.vectors for b in s.bases] for s in base.site_sets]

    def objective(theta):
        unitaries = unitaries_from_params(theta, layout.dims)
        total = 0.0
        for k in range(N):
            bases = [u @ vectors[site][k] for site, u in enumerate(unitaries)]
            total += site_informations(joint_distribution(state, bases), layout).sum()
        return total / (N * layout.n)

    size = sum(d * d for d in layout.dims)
    theta, _, metadata = _maximize(objective, size, config, f"C_{N}")
    setting = base.rotated(unitaries_from_params(theta, layout.dims))
    report = c_n_given(state, setting, optimizer=metadata)
    report.setting["parameters"] = [float(x) for x in theta]
    return report


def j_n_optimize(state, N, restarts=None, seed=None, max_iters=None, tol=None, workers=None):
    """Best J_N over one common rotation of the standard set applied on every site."""
    config = OptimizerConfig.resolve(
        restarts=restarts, seed=seed, max_iters=max_iters, tol=tol, workers=workers
    )
    d = check_j_layout(state.layout)
    vectors = [b.vectors for b in standard_mub_set(d, N).bases]

    def objective(theta):
        (u,) = unitaries_from_params(theta, (d,))
        return sum(
            antisymmetric_weight(joint_distribution(state, [u @ v] * d), d) for v in vectors
        )

    theta, value, metadata = _maximize(objective, d * d, config, f"J_{N}")
    return {"value": float(value), "parameters": [float(x) for x in theta], "optimizer": metadata}
