"""Parameterised state families, white noise and the three-tangle."""

import numpy as np

from apps.common.exceptions import DimensionMismatchError, InvalidParameterError, InvalidStateError
from apps.common.validators import validate_probability
from apps.mub.pauli import PauliIndex, gen_pauli
from apps.qstate.ops import apply_local, ketbra
from apps.qstate.types import DensityOperator, StateVector, SubsystemLayout

SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)


def principal_sqrt(matrix, name="operator"):
    """Positive square root of a Hermitian positive definite matrix via eigh."""
    values, vectors = np.linalg.eigh(matrix)
    if values.min() <= 0:
        raise InvalidParameterError(
            f"{name} is not positive definite (smallest eigenvalue {values.min():.3g}).",
            code="not_positive_definite",
        )
    return (vectors * np.sqrt(values)) @ vectors.conj().T


def ghz_vector(d, n):
    layout = SubsystemLayout((d,) * n)
    amplitudes = np.zeros(layout.total_dim, dtype=complex)
    for i in range(d):
        amplitudes[np.ravel_multi_index((i,) * n, layout.dims)] = 1.0
    return StateVector.from_unnormalized(amplitudes, layout)


def psi33_vector(a, b, c):
    """a Σ|iii> + b Σ|i,i+1,i+2> + c Σ|i,i+2,i+1>, normalised."""
    layout = SubsystemLayout((3, 3, 3))
    amplitudes = np.zeros(27, dtype=complex)
    for i in range(3):
        amplitudes[np.ravel_multi_index((i, i, i), layout.dims)] = a
        amplitudes[np.ravel_multi_index((i, (i + 1) % 3, (i + 2) % 3), layout.dims)] = b
        amplitudes[np.ravel_multi_index((i, (i + 2) % 3, (i + 1) % 3), layout.dims)] = c
    if not np.any(amplitudes):
        raise InvalidParameterError("a = b = c = 0 is not a state.", code="zero_state")
    return StateVector.from_unnormalized(amplitudes, layout)


def ghz_mes_state(x, z=1.0):
    """g_{x1}⊗g_{x2}⊗g_{x3} P_z |GHZ_2,3>, P_z = diag(z, 1/z) on site 0."""
    x = tuple(float(v) for v in x)
    if len(x) != 3:
        raise InvalidParameterError("x needs three components.", code="x_length")
    if any(not 0.0 <= v < 0.5 for v in x):
        raise InvalidParameterError(f"Every x_j must lie in [0, 1/2), got {x}.", code="x_range")
    z = complex(z)
    if z == 0 or abs(z) > 1.0 + 1e-12:
        raise InvalidParameterError(f"z must satisfy 0 < |z| <= 1, got {z}.", code="z_range")

    g = [principal_sqrt(np.eye(2) / 2 + v * SIGMA_X, name="1/2 + x σx") for v in x]
    first = g[0] @ np.diag([z, 1 / z])
    psi = apply_local([first, g[1], g[2]], ghz_vector(2, 3))
    return StateVector(psi.amplitudes / psi.norm(), psi.layout)


def qutrit_gram(g, k):
    """g†g = I/3 + g S_k + (g S_k)^†, the Hermitian form of the MES constraint."""
    term = complex(g) * gen_pauli(3, k)
    return np.eye(3) / 3 + term + term.conj().T


def qutrit_mes_state(g, k, abc):
    """g_k^(1)⊗g_k^(2)⊗g_k^(3) Ψ_3,3(a,b,c) with g_k^(j) the positive root of its Gram form."""
    g = tuple(g)
    if len(g) != 3:
        raise InvalidParameterError("g needs three components.", code="g_length")
    k = PauliIndex.of(k)
    ops = [principal_sqrt(qutrit_gram(value, k), name=f"g†g for g={value}") for value in g]
    psi = apply_local(ops, psi33_vector(*abc))
    return StateVector(psi.amplitudes / psi.norm(), psi.layout)


def white_noise_mix(state, p):
    """(1-p) ρ + p I/D."""
    p = validate_probability(p)
    rho = ketbra(state)
    dim = rho.layout.total_dim
    return DensityOperator((1 - p) * rho.matrix + p * np.eye(dim) / dim, rho.layout)


def three_tangle(psi):
    """τ3 = 4 |d1 - 2 d2 + 4 d3| (Cayley hyperdeterminant of the amplitude tensor)."""
    if not isinstance(psi, StateVector):
        raise InvalidStateError("The three-tangle is defined for pure states.", code="not_pure")
    if psi.layout.dims != (2, 2, 2):
        raise DimensionMismatchError(f"Three qubits required, got {psi.layout.dims}.")
    a = psi.tensor
    d1 = (
        a[0, 0, 0] ** 2 * a[1, 1, 1] ** 2
        + a[0, 0, 1] ** 2 * a[1, 1, 0] ** 2
        + a[0, 1, 0] ** 2 * a[1, 0, 1] ** 2
        + a[1, 0, 0] ** 2 * a[0, 1, 1] ** 2
    )
    d2 = (
        a[0, 0, 0] * a[1, 1, 1] * a[0, 1, 1] * a[1, 0, 0]
        + a[0, 0, 0] * a[1, 1, 1] * a[1, 0, 1] * a[0, 1, 0]
        + a[0, 0, 0] * a[1, 1, 1] * a[1, 1, 0] * a[0, 0, 1]
        + a[0, 1, 1] * a[1, 0, 0] * a[1, 0, 1] * a[0, 1, 0]
        + a[0, 1, 1] * a[1, 0, 0] * a[1, 1, 0] * a[0, 0, 1]
        + a[1, 0, 1] * a[0, 1, 0] * a[1, 1, 0] * a[0, 0, 1]
    )
    d3 = (
        a[0, 0, 0] * a[1, 1, 0] * a[1, 0, 1] * a[0, 1, 1]
        + a[1, 1, 1] * a[0, 0, 1] * a[0, 1, 0] * a[1, 0, 0]
    )
    return float(4 * abs(d1 - 2 * d2 + 4 * d3))
