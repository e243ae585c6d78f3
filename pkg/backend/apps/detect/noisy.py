"""Closed forms for noisy GHZ and Aharonov states, and noise-threshold root finding.

ρ_{d,3}(p) = (1-p)|GHZ_d,3><GHZ_d,3| + p I/d³. In the Z and X eigenbases its
outcome tables take only a few distinct values, so C_2 follows from counts and
weights without forming any d³-dimensional matrix.
"""

import logging
from math import factorial

import numpy as np
from scipy.optimize import bisect, brentq
from scipy.special import xlogy

from apps.common.exceptions import InvalidParameterError, NumericalError
from apps.common.validators import validate_dimension, validate_probability

logger = logging.getLogger(__name__)


def _xlog2x(x):
    return xlogy(x, x) / np.log(2)


def _entropy(*levels):
    """Shannon entropy of a table holding ``count`` entries equal to ``weight`` per level."""
    return float(-sum(count * _xlog2x(weight) for count, weight in levels))


def ghz33_noise_cn(p, N):
    """C_N of noisy GHZ_3,3 at the standard Pauli setting, N ∈ {2, 3, 4}."""
    p = validate_probability(p)
    if N not in (2, 3, 4):
        raise InvalidParameterError(f"N must be 2, 3 or 4 for qutrits, got {N}.", code="N_range")
    value = (
        (6 * N - 4) * _xlog2x(p)
        + 3 * (N - 2) * _xlog2x(3 - 2 * p)
        + _xlog2x(9 - 8 * p)
    )
    return float(value / (9 * N))


def noisy_ghz_informations(p, d):
    """(I_Z, I_X): one-vs-rest information of ρ_{d,3}(p) in the Z and X bases."""
    p = validate_probability(p)
    d = validate_dimension(d)
    log_d = np.log2(d)
    noise = p / d**3

    joint_z = _entropy((d, (1 - p) / d + noise), (d**3 - d, noise))
    pair_z = _entropy((d, (1 - p) / d + p / d**2), (d**2 - d, p / d**2))
    info_z = log_d + pair_z - joint_z

    joint_x = _entropy((d**2, (1 - p) / d**2 + noise), (d**3 - d**2, noise))
    info_x = 3 * log_d - joint_x
    return max(info_z, 0.0), max(info_x, 0.0)


def noisy_ghz_c2(p, d):
    """C_2 of ρ_{d,3}(p) with Z and X on every site."""
    return float(np.mean(noisy_ghz_informations(p, d)))


def r_quantity(p, d):
    """R(p; d) = (6/5) C_2(ρ_{d,3}(p)) / log2 d; detection as genuinely tripartite iff R > 1."""
    return 1.2 * noisy_ghz_c2(p, d) / np.log2(validate_dimension(d))


def p_max(d, tol=1e-6):
    """Noise level where R(p; d) = 1, by bisection on [0, 1] until |R - 1| ≤ tol."""
    d = validate_dimension(d)
    try:
        root = bisect(lambda p: r_quantity(p, d) - 1.0, 0.0, 1.0, xtol=tol * 1e-3)
    except ValueError as exc:
        raise NumericalError(
            f"R(p; {d}) - 1 has no sign change on [0, 1].", code="no_bracket"
        ) from exc
    residual = abs(r_quantity(root, d) - 1.0)
    if residual > tol:
        raise NumericalError(
            f"|R(p; {d}) - 1| = {residual:.3g} at p = {root:.8f} exceeds {tol:g}.",
            code="residual",
        )
    logger.debug("p_max(%d) = %.8f", d, root)
    return float(root)


def detection_boundary(fn, threshold, lo=0.0, hi=1.0, xtol=1e-12):
    """Noise level p in [lo, hi] where fn(p) crosses ``threshold``."""
    try:
        return float(brentq(lambda p: fn(p) - threshold, lo, hi, xtol=xtol))
    except ValueError as exc:
        raise NumericalError(
            f"No crossing of {threshold!r} on [{lo}, {hi}].", code="no_bracket"
        ) from exc


def j_n_noisy_aharonov(p, N, d=3):
    """J_N of (1-p)|S_d><S_d| + p I/d^d: N((1-p) + p d!/d^d)."""
    p = validate_probability(p)
    d = validate_dimension(d)
    return float(int(N) * ((1 - p) + p * factorial(d) / d**d))
