"""Numeric validators for states, operators and parameters."""

import numpy as np

from .conf import get_setting
from .exceptions import DimensionMismatchError, InvalidParameterError, InvalidStateError


class DensityMatrixValidator:
    """
    Validate that a matrix is a density operator:
    - square
    - Hermitian within ATOL
    - unit trace within ATOL
    - eigenvalues not below -EIG_CLAMP
    """

    def __init__(self, atol=None, eig_clamp=None):
        self.atol = get_setting("ATOL") if atol is None else atol
        self.eig_clamp = get_setting("EIG_CLAMP") if eig_clamp is None else eig_clamp

    def validate(self, matrix):
        if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
            raise DimensionMismatchError(
                f"Density operator must be square, got shape {matrix.shape}.",
                code="matrix_not_square",
            )

        if not np.allclose(matrix, matrix.conj().T, rtol=0.0, atol=self.atol):
            raise InvalidStateError("Density operator is not Hermitian.", code="not_hermitian")

        trace = np.trace(matrix).real
        if abs(trace - 1.0) > self.atol * max(1.0, np.sqrt(matrix.shape[0])):
            raise InvalidStateError(f"Density operator has trace {trace!r}.", code="bad_trace")

        smallest = float(np.linalg.eigvalsh(matrix).min())
        if smallest < -self.eig_clamp:
            raise InvalidStateError(
                f"Density operator has eigenvalue {smallest!r}.", code="not_positive"
            )

    def get_help_text(self):
        return (
            "A density operator must be square, Hermitian, have unit trace and no "
            f"eigenvalue below -{self.eig_clamp}."
        )


def validate_probability(p, name="p"):
    """Return ``p`` as float if it lies in [0, 1]."""
    p = float(p)
    if not 0.0 <= p <= 1.0:
        raise InvalidParameterError(f"{name} must lie in [0, 1], got {p}.", code=f"{name}_range")
    return p


def validate_dimension(d, name="d"):
    d = int(d)
    if d < 2:
        raise InvalidParameterError(f"{name} must be at least 2, got {d}.", code=f"{name}_range")
    return d


def validate_kappa(kappa, d):
    """Efficiency parameter of a MUM must satisfy 1/d < kappa <= 1."""
    kappa = float(kappa)
    if not (1.0 / d < kappa <= 1.0 + 1e-12):
        raise InvalidParameterError(
            f"kappa must satisfy 1/d < kappa <= 1 (d={d}), got {kappa}.", code="kappa_range"
        )
    return min(kappa, 1.0)


def validate_unitary(matrix, atol=1e-10):
    matrix = np.asarray(matrix, dtype=complex)
    if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
        raise DimensionMismatchError(f"Unitary must be square, got shape {matrix.shape}.")
    identity = np.eye(matrix.shape[0])
    if not np.allclose(matrix.conj().T @ matrix, identity, rtol=0.0, atol=atol):
        raise InvalidParameterError("Matrix is not unitary.", code="not_unitary")
    return matrix
