"""Measurement bases, MUB sets and MUM sets with their validators."""

from dataclasses import dataclass, field
from itertools import combinations

import numpy as np

from apps.common.conf import get_setting
from apps.common.exceptions import DimensionMismatchError, InvalidParameterError


@dataclass(frozen=True, eq=False)
class Basis:
    """d orthonormal vectors stored as the columns of a unitary matrix."""

    vectors: np.ndarray
    label: str = ""

    def __post_init__(self):
        vectors = np.array(self.vectors, dtype=complex)
        if vectors.ndim != 2 or vectors.shape[0] != vectors.shape[1]:
            raise DimensionMismatchError(f"Basis matrix must be square, got {vectors.shape}.")
        gram = vectors.conj().T @ vectors
        if not np.allclose(gram, np.eye(vectors.shape[0]), rtol=0.0, atol=1e-10):
            raise InvalidParameterError(
                "Basis vectors are not orthonormal.", code="not_orthonormal"
            )
        vectors.setflags(write=False)
        object.__setattr__(self, "vectors", vectors)

    @property
    def dim(self):
        return self.vectors.shape[0]

    def vector(self, i):
        return self.vectors[:, i]

    def projectors(self):
        return [np.outer(self.vector(i), self.vector(i).conj()) for i in range(self.dim)]

    def rotated(self, unitary):
        return Basis(unitary @ self.vectors, label=self.label)


def overlaps(first, second):
    """|<b1(i)|b2(j)>|² as a d×d table."""
    return np.abs(first.vectors.conj().T @ second.vectors) ** 2


def is_mutually_unbiased(bases, atol=None):
    atol = get_setting("MUB_ATOL") if atol is None else atol
    bases = list(bases)
    if len({b.dim for b in bases}) > 1:
        return False
    for first, second in combinations(bases, 2):
        if not np.allclose(overlaps(first, second), 1.0 / first.dim, rtol=0.0, atol=atol):
            return False
    return True


@dataclass(frozen=True, eq=False)
class MubSet:
    """N pairwise mutually unbiased bases of C^d."""

    bases: tuple
    pauli_indices: tuple = field(default=())

    def __post_init__(self):
        bases = tuple(self.bases)
        if not bases:
            raise InvalidParameterError("A MUB set needs at least one basis.")
        if len({b.dim for b in bases}) != 1:
            raise DimensionMismatchError("All bases of a MUB set must share one dimension.")
        if not is_mutually_unbiased(bases):
            raise InvalidParameterError("Bases are not mutually unbiased.", code="not_unbiased")
        object.__setattr__(self, "bases", bases)
        object.__setattr__(self, "pauli_indices", tuple(self.pauli_indices))

    @property
    def d(self):
        return self.bases[0].dim

    @property
    def N(self):
        return len(self.bases)

    def first(self, count):
        return MubSet(self.bases[:count], self.pauli_indices[:count])


def mum_violations(measurements, kappa):
    """Largest deviation from each defining MUM condition."""
    d = measurements[0][0].shape[0]
    identity = np.eye(d)
    report = {"completeness": 0.0, "trace": 0.0, "within": 0.0, "across": 0.0, "positivity": 0.0}
    off_value = (1.0 - kappa) / (d - 1)
    for k, elements in enumerate(measurements):
        report["completeness"] = max(report["completeness"], np.abs(sum(elements) - identity).max())
        for i, p in enumerate(elements):
            report["trace"] = max(report["trace"], abs(np.trace(p) - 1.0))
            report["positivity"] = max(report["positivity"], -min(0.0, np.linalg.eigvalsh(p).min()))
            for j, q in enumerate(elements):
                expected = kappa if i == j else off_value
                report["within"] = max(report["within"], abs(np.trace(p @ q) - expected))
        for other in measurements[k + 1 :]:
            for p in elements:
                for q in other:
                    report["across"] = max(report["across"], abs(np.trace(p @ q) - 1.0 / d))
    return report


@dataclass(frozen=True, eq=False)
class MumSet:
    """N mutually unbiased measurements of d POVM elements with efficiency κ."""

    measurements: tuple
    kappa: float
    operator_basis: str = "pauli"

    def __post_init__(self):
        measurements = tuple(
            tuple(np.array(p, dtype=complex) for p in elements) for elements in self.measurements
        )
        d = measurements[0][0].shape[0]
        if any(len(elements) != d for elements in measurements):
            raise DimensionMismatchError("Every measurement needs d elements.")
        if not 1.0 / d < self.kappa <= 1.0 + 1e-12:
            raise InvalidParameterError(f"kappa={self.kappa} outside (1/d, 1].", code="kappa_range")
        violations = mum_violations(measurements, self.kappa)
        worst = max(violations, key=violations.get)
        if violations[worst] > get_setting("MUB_ATOL"):
            raise InvalidParameterError(
                f"MUM condition '{worst}' violated by {violations[worst]:.2e}.", code="not_mum"
            )
        object.__setattr__(self, "measurements", measurements)

    @property
    def d(self):
        return self.measurements[0][0].shape[0]

    @property
    def N(self):
        return len(self.measurements)

    def first(self, count):
        return MumSet(self.measurements[:count], self.kappa, self.operator_basis)
