"""Generalized Pauli (shift and clock) operators and their eigenbases."""

from dataclasses import dataclass

import numpy as np

from apps.common.exceptions import InvalidParameterError, UnsupportedDomainError
from apps.common.validators import validate_dimension

from .types import Basis


def is_prime(d):
    if d < 2:
        return False
    return all(d % f for f in range(2, int(d**0.5) + 1))


def omega(d):
    return np.exp(2j * np.pi / d)


def shift(d):
    """X_d|j> = |j+1 mod d>."""
    return np.roll(np.eye(d, dtype=complex), 1, axis=0)


def clock(d):
    """Z_d = diag(ω^j)."""
    return np.diag(omega(d) ** np.arange(d))


@dataclass(frozen=True)
class PauliIndex:
    """Exponent pair k = (k1, k2) of S_{d,k} = X^k1 Z^k2."""

    k1: int
    k2: int

    @classmethod
    def of(cls, k):
        if isinstance(k, cls):
            return k
        k1, k2 = k
        return cls(int(k1), int(k2))

    def reduced(self, d):
        return PauliIndex(self.k1 % d, self.k2 % d)

    def is_trivial(self, d):
        return self.k1 % d == 0 and self.k2 % d == 0

    def as_tuple(self):
        return (self.k1, self.k2)


def gen_pauli(d, k):
    d = validate_dimension(d)
    k = PauliIndex.of(k).reduced(d)
    return np.linalg.matrix_power(shift(d), k.k1) @ np.linalg.matrix_power(clock(d), k.k2)


def pauli_power(d, k, m):
    return np.linalg.matrix_power(gen_pauli(d, k), int(m))


def pauli_eigenbasis(d, k):
    """Eigenvectors of S_{d,k} as columns.

    S^d is a scalar c, so the spectrum is ν·ω^i with ν the principal d-th root
    of c (ν = 1 except for d = 2, k = (1, 1) where ν = i). Column i holds the
    eigenvector for ν·ω^i, phase-fixed so its first nonzero entry is real
    positive.
    """
    d = validate_dimension(d)
    k = PauliIndex.of(k).reduced(d)
    if k.is_trivial(d):
        raise InvalidParameterError("k = (0, 0) has no distinguished eigenbasis.", code="trivial_k")
    operator = gen_pauli(d, k)
    scalar = np.linalg.matrix_power(operator, d)[0, 0]
    nu = np.exp(1j * np.angle(scalar) / d)
    values, vectors = np.linalg.eig(operator)
    positions = np.mod(np.rint(np.angle(values / nu) / (2 * np.pi / d)), d).astype(int)
    if sorted(positions) != list(range(d)):
        raise UnsupportedDomainError(f"S_{{{d},{k.as_tuple()}}} has a degenerate spectrum.")

    basis = np.empty((d, d), dtype=complex)
    for value_index, position in enumerate(positions):
        basis[:, position] = fix_phase(vectors[:, value_index])
    # QR removes round-off non-orthogonality; the diagonal of r restores the phases.
    q, r = np.linalg.qr(basis)
    phases = np.diag(r) / np.abs(np.diag(r))
    return Basis(q * phases, label=f"S{k.as_tuple()}")


def fix_phase(vector, atol=1e-12):
    vector = vector / np.linalg.norm(vector)
    first = np.flatnonzero(np.abs(vector) > atol)[0]
    return vector * np.exp(-1j * np.angle(vector[first]))


def mub_pauli_indices(d, N):
    """Z, X, then XZ^m for m = 1, 2, ...; the standard ordering of MUB settings."""
    return [PauliIndex(0, 1), PauliIndex(1, 0)] + [PauliIndex(1, m) for m in range(1, N - 1)]


def gell_mann_basis(d):
    """d²-1 traceless Hermitian matrices with tr(G_a G_b) = δ_ab."""
    d = validate_dimension(d)
    operators = []
    for j in range(d):
        for k in range(j + 1, d):
            sym = np.zeros((d, d), dtype=complex)
            sym[j, k] = sym[k, j] = 1 / np.sqrt(2)
            anti = np.zeros((d, d), dtype=complex)
            anti[j, k], anti[k, j] = -1j / np.sqrt(2), 1j / np.sqrt(2)
            operators.extend([sym, anti])
    for level in range(1, d):
        diagonal = np.zeros(d)
        diagonal[:level] = 1.0
        diagonal[level] = -level
        operators.append(np.diag(diagonal / np.sqrt(level * (level + 1))).astype(complex))
    return operators
