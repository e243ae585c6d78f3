"""Sufficient condition for maximal C_N from local Pauli symmetries.

A pure state with completely mixed single-site marginals that is left invariant
by ⊗_l S_{d,k}^{m_{k,l}} for N Pauli indices k with pairwise unbiased
eigenbases maximizes C_N at the setting built from those eigenbases.
"""

import logging
from dataclasses import dataclass
from itertools import product

import numpy as np

from apps.common.exceptions import (
    CertificationError,
    DimensionMismatchError,
    InvalidStateError,
)
from apps.corr.measures import c_n_given
from apps.corr.setting import MeasurementSetting
from apps.mub.construct import check_mub_domain
from apps.mub.pauli import PauliIndex, is_prime, mub_pauli_indices, pauli_eigenbasis, pauli_power
from apps.mub.types import MubSet
from apps.qstate.ops import apply_local, partial_trace
from apps.qstate.types import StateVector

logger = logging.getLogger(__name__)

SYMMETRY_TOL = 1e-9
MARGINAL_TOL = 1e-9


@dataclass
class SymmetryCertificate:
    d: int
    pauli_indices: list
    exponents: list
    marginals_mixed: list
    residuals: list
    c_value: float = None

    @property
    def N(self):
        return len(self.pauli_indices)

    def setting(self, n):
        return certified_setting(self.d, self.pauli_indices, n)


def _require_pure(psi):
    if not isinstance(psi, StateVector):
        raise InvalidStateError("The symmetry certifier needs a pure state.", code="not_pure")


def check_mixed_marginals(psi, tol=MARGINAL_TOL):
    """Flag l is True iff ‖tr_rest |psi><psi| - I/d_l‖_F ≤ tol."""
    _require_pure(psi)
    flags = []
    for site, d in enumerate(psi.layout.dims):
        marginal = partial_trace(psi, [site]).matrix
        flags.append(bool(np.linalg.norm(marginal - np.eye(d) / d) <= tol))
    return flags


def symmetry_residual(psi, k, exponents):
    """‖(⊗_l S_{d,k}^{m_l})|psi> - |psi>‖."""
    d = psi.layout.dims[0]
    ops = [pauli_power(d, k, m) for m in exponents]
    return float(np.linalg.norm(apply_local(ops, psi).amplitudes - psi.amplitudes))


def find_symmetry(psi, k, uniform_exponents=False, tol=SYMMETRY_TOL):
    """First exponent table (m_1..m_n), m_l ∈ {1..d-1}, making ⊗ S_k^{m_l} a symmetry of psi.

    With ``uniform_exponents`` only m_1 = ... = m_n is tried. Returns
    ``(exponents, residual)`` or None.
    """
    _require_pure(psi)
    layout = psi.layout
    if not layout.is_uniform():
        raise DimensionMismatchError(
            f"Pauli symmetries need equal local dimensions, got {layout.dims}.", code="uniform_dims"
        )
    d, n = layout.dims[0], layout.n
    k = PauliIndex.of(k)
    if uniform_exponents:
        candidates = ((m,) * n for m in range(1, d))
    else:
        candidates = product(range(1, d), repeat=n)
    for exponents in candidates:
        residual = symmetry_residual(psi, k, exponents)
        if residual <= tol:
            logger.debug(
                "S_%s symmetry with exponents %s (residual %.2e)", k.as_tuple(), exponents, residual
            )
            return list(exponents), residual
    return None


def candidate_indices(d):
    """Pauli directions with pairwise unbiased eigenbases, in the standard order."""
    return mub_pauli_indices(d, d + 1 if is_prime(d) else 2)


def certified_setting(d, pauli_indices, n):
    bases = tuple(pauli_eigenbasis(d, k) for k in pauli_indices)
    site_set = MubSet(bases, tuple(pauli_indices))
    return MeasurementSetting((site_set,) * n)


def certify_theorem2(psi, N):
    """Search N Pauli symmetries of psi and verify C_N = log2 d at their setting.

    Raises CertificationError when no certificate is found. That outcome is
    inconclusive: the condition is sufficient, not necessary.
    """
    _require_pure(psi)
    layout = psi.layout
    if not layout.is_uniform():
        raise DimensionMismatchError(
            f"Certification needs equal local dimensions, got {layout.dims}.", code="uniform_dims"
        )
    d = check_mub_domain(layout.dims[0], N)

    flags = check_mixed_marginals(psi)
    if not all(flags):
        raise CertificationError(
            "Single-site marginals are not completely mixed.",
            code="MARGINALS_NOT_MIXED",
            residuals={"marginals_mixed": flags},
        )

    found, missed = [], []
    for k in candidate_indices(d):
        hit = find_symmetry(psi, k)
        if hit is None:
            missed.append(list(k.as_tuple()))
            continue
        found.append((k, *hit))
        if len(found) == N:
            break
    if len(found) < N:
        raise CertificationError(
            f"Found {len(found)} of {N} Pauli symmetries.",
            residuals={"found": [list(k.as_tuple()) for k, _, _ in found], "missing": missed},
        )

    indices = [k for k, _, _ in found]
    report = c_n_given(psi, certified_setting(d, indices, layout.n))
    if abs(report.c_value - np.log2(d)) > SYMMETRY_TOL:
        raise CertificationError(
            f"Certified setting gives C_{N} = {report.c_value!r}, not log2({d}).",
            code="VERIFICATION_FAILED",
            residuals={"c_value": report.c_value},
        )
    logger.info("Certified C_%d = log2(%d) with K = %s", N, d, [k.as_tuple() for k in indices])
    return SymmetryCertificate(
        d=d,
        pauli_indices=indices,
        exponents=[m for _, m, _ in found],
        marginals_mixed=flags,
        residuals=[r for _, _, r in found],
        c_value=report.c_value,
    )
