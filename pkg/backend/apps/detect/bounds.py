"""Entropic uncertainty bounds f(N, d) and the thresholds derived from them.

f(N, d) lower-bounds Σ_k H(B_k) over N mutually unbiased bases. A fully
separable state has C_N ≤ log2 d - f/N and a biseparable three-party state has
C_N ≤ log2 d - f/(3N).
"""

import logging
from dataclasses import dataclass
from functools import lru_cache
from pathlib import Path

import numpy as np
import yaml

from apps.common.conf import get_setting
from apps.common.exceptions import InvalidParameterError, UnsupportedDomainError
from apps.common.validators import validate_dimension, validate_kappa

from .serializers import BoundRegistrySerializer

logger = logging.getLogger(__name__)

PAIRWISE = "pairwise"
WEHNER = "wehner"
SANCHEZ_RUIZ = "sanchez-ruiz"
MAASSEN_UFFINK = "maassen-uffink"


@dataclass(frozen=True)
class UncertaintyBound:
    N: int
    d: int
    value: float
    provenance: str
    note: str = ""

    def __post_init__(self):
        if self.value < 0 or self.value > self.N * np.log2(self.d) + 1e-12:
            raise InvalidParameterError(
                f"f({self.N},{self.d}) = {self.value} is outside [0, N·log2 d].",
                code="bound_range",
            )


def _is_power_of_two(d):
    return d & (d - 1) == 0


def formula_bounds(N, d):
    """Every closed-form bound that applies to (N, d)."""
    bounds = []
    if N == 2:
        bounds.append(UncertaintyBound(N, d, float(np.log2(d)), MAASSEN_UFFINK))
    bounds.append(UncertaintyBound(N, d, N / 2 * np.log2(d), PAIRWISE))
    bounds.append(UncertaintyBound(N, d, float(-N * np.log2((N + d - 1) / (d * N))), WEHNER))
    if _is_power_of_two(d) and N == d + 1:
        half = d / 2
        value = half * np.log2(half) + (half + 1) * np.log2(half + 1)
        bounds.append(UncertaintyBound(N, d, float(value), SANCHEZ_RUIZ))
    return bounds


def load_registry(path):
    """Read user-supplied bounds from a YAML file of the form ``bounds: [{N, d, value}, ...]``."""
    with Path(path).open(encoding="utf-8") as handle:
        payload = yaml.safe_load(handle) or {"bounds": []}
    serializer = BoundRegistrySerializer(data=payload)
    if not serializer.is_valid():
        raise InvalidParameterError(
            f"Invalid bounds file {path}: {serializer.errors}", code="bounds_file"
        )
    registry = {}
    for entry in serializer.validated_data["bounds"]:
        bound = UncertaintyBound(**entry)
        registry[(bound.N, bound.d)] = bound
    logger.info("Loaded %d registered bounds from %s", len(registry), path)
    return registry


@lru_cache(maxsize=8)
def _cached_registry(path):
    return load_registry(path)


def default_registry():
    path = get_setting("BOUNDS_FILE")
    return _cached_registry(str(path)) if path else {}


def f_bound(N, d, registry=None):
    """Best applicable f(N, d); ties keep the first candidate in listing order."""
    N, d = int(N), validate_dimension(d)
    if N < 2:
        raise InvalidParameterError(f"f(N, d) needs N ≥ 2, got {N}.", code="N_range")
    candidates = formula_bounds(N, d)
    registry = default_registry() if registry is None else registry
    if (N, d) in registry:
        candidates.append(registry[(N, d)])
    best = candidates[0]
    for bound in candidates[1:]:
        if bound.value > best.value + 1e-12:
            best = bound
    return best


def check_basis_count(N, d):
    d = validate_dimension(d)
    if int(N) > d + 1:
        raise UnsupportedDomainError(f"At most d+1 = {d + 1} MUBs exist in dimension {d}.")
    return d


def sep_threshold(N, d, registry=None):
    """log2 d - f(N, d)/N: fully separable states never exceed it."""
    d = check_basis_count(N, d)
    return float(np.log2(d) - f_bound(N, d, registry).value / N)


def bisep_threshold(N, d, registry=None):
    """log2 d - f(N, d)/(3N): biseparable three-party states never exceed it."""
    d = check_basis_count(N, d)
    return float(np.log2(d) - f_bound(N, d, registry).value / (3 * N))


def mum_thresholds(d, kappa):
    """(sep, bisep) for a complete set of d+1 MUMs of efficiency κ."""
    d = validate_dimension(d)
    kappa = validate_kappa(kappa, d)
    deficit = np.log2((1 + d) / (1 + kappa))
    return float(np.log2(d) - deficit), float(np.log2(d) - deficit / 3)


def j_n_bisep_bound(N, d):
    """Biseparable states satisfy J_N ≤ 1 + (N-1)/d."""
    return 1.0 + (int(N) - 1) / validate_dimension(d)
