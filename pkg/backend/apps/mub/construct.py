"""Standard MUB sets from Pauli eigenbases and MUM sets from operator bases."""

import logging

import numpy as np
from scipy.linalg import null_space

from apps.common.exceptions import InvalidParameterError, UnsupportedDomainError
from apps.common.validators import validate_dimension, validate_kappa, validate_unitary

from .pauli import gell_mann_basis, is_prime, mub_pauli_indices, pauli_eigenbasis
from .types import MubSet, MumSet

logger = logging.getLogger(__name__)


def check_mub_domain(d, N):
    d = validate_dimension(d)
    if N < 1:
        raise InvalidParameterError(f"N must be positive, got {N}.", code="N_range")
    if N > d + 1:
        raise UnsupportedDomainError(f"At most d+1 = {d + 1} MUBs exist in dimension {d}.")
    if N > 2 and not is_prime(d):
        raise UnsupportedDomainError(f"More than two MUBs are only supported for prime d, got {d}.")
    return d


def standard_mub_set(d, N):
    """Eigenbases of Z, X, XZ, XZ², ... in that order."""
    d = check_mub_domain(d, N)
    indices = mub_pauli_indices(d, N)
    return MubSet(tuple(pauli_eigenbasis(d, k) for k in indices), tuple(indices))


def rotate_mub_set(mub_set, unitary):
    unitary = validate_unitary(unitary)
    if unitary.shape[0] != mub_set.d:
        raise InvalidParameterError(
            f"Unitary of size {unitary.shape[0]} for dimension {mub_set.d}.", code="dimension"
        )
    return MubSet(tuple(b.rotated(unitary) for b in mub_set.bases), mub_set.pauli_indices)


def _simplex(d):
    """d unit vectors in R^(d-1) with pairwise inner product -1/(d-1)."""
    orthogonal = null_space(np.ones((1, d)))
    return orthogonal * np.sqrt(d / (d - 1))


def traceless_directions(d, operator_basis):
    """Per measurement, d traceless Hermitian operators F with tr(F F') = v·v'."""
    if operator_basis == "pauli":
        if not is_prime(d):
            raise UnsupportedDomainError(
                f"The Pauli operator basis needs prime d, got {d}; use 'gell-mann'."
            )
        scale = np.sqrt((d - 1) / d)
        identity = np.eye(d) / d
        return [
            [(projector - identity) / scale for projector in basis.projectors()]
            for basis in standard_mub_set(d, d + 1).bases
        ]
    if operator_basis == "gell-mann":
        operators = gell_mann_basis(d)
        vertices = _simplex(d)
        groups = [operators[g * (d - 1) : (g + 1) * (d - 1)] for g in range(d + 1)]
        return [
            [sum(weight * op for weight, op in zip(vertex, group)) for vertex in vertices]
            for group in groups
        ]
    raise InvalidParameterError(
        f"Unknown operator basis '{operator_basis}'.", code="operator_basis"
    )


def max_kappa(directions, d):
    """Largest κ keeping every I/d + tF positive semidefinite."""
    lowest = min(np.linalg.eigvalsh(f).min() for elements in directions for f in elements)
    t_max = 1.0 / (d * abs(lowest))
    return min(1.0, 1.0 / d + t_max**2)


def build_mum_set(d, kappa, operator_basis=None):
    """Complete set of d+1 MUMs, P_k(i) = I/d + t F_k(i) with t² = κ - 1/d."""
    d = validate_dimension(d)
    kappa = validate_kappa(kappa, d)
    if operator_basis is None:
        operator_basis = "pauli" if is_prime(d) else "gell-mann"

    directions = traceless_directions(d, operator_basis)
    achievable = max_kappa(directions, d)
    if kappa > achievable + 1e-12:
        raise InvalidParameterError(
            f"kappa={kappa} not achievable with the {operator_basis} basis in d={d}; "
            f"maximum is {achievable:.12g}.",
            code="kappa_infeasible",
        )

    t = np.sqrt(kappa - 1.0 / d)
    identity = np.eye(d, dtype=complex) / d
    measurements = tuple(tuple(identity + t * f for f in elements) for elements in directions)
    logger.debug("Built %d MUMs in d=%d with kappa=%.6g (%s)", d + 1, d, kappa, operator_basis)
    return MumSet(measurements, kappa, operator_basis)
