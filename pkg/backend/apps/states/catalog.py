"""Named states and the StateSpec registry used by the command line."""

import logging
from dataclasses import dataclass, field
from itertools import permutations

import numpy as np

from apps.common.exceptions import InvalidParameterError
from apps.common.validators import validate_dimension
from apps.qstate.ops import partial_trace
from apps.qstate.types import DensityOperator, StateVector, SubsystemLayout

from .families import (
    ghz_mes_state,
    ghz_vector,
    psi33_vector,
    qutrit_mes_state,
    white_noise_mix,
)

logger = logging.getLogger(__name__)


def _permutation_sign(perm):
    sign, perm = 1, list(perm)
    for i in range(len(perm)):
        while perm[i] != i:
            j = perm[i]
            perm[i], perm[j] = perm[j], perm[i]
            sign = -sign
    return sign


def phi_plus(d=2):
    return ghz_vector(validate_dimension(d), 2)


def ghz(d=2, n=3):
    if int(n) < 2:
        raise InvalidParameterError(f"GHZ needs n >= 2 sites, got {n}.", code="n_range")
    return ghz_vector(validate_dimension(d), int(n))


def w_state(n=3):
    layout = SubsystemLayout((2,) * int(n))
    amplitudes = np.zeros(layout.total_dim, dtype=complex)
    for site in range(layout.n):
        digits = [0] * layout.n
        digits[site] = 1
        amplitudes[np.ravel_multi_index(tuple(digits), layout.dims)] = 1.0
    return StateVector.from_unnormalized(amplitudes, layout)


def product(d=2, n=3):
    layout = SubsystemLayout((validate_dimension(d),) * int(n))
    return StateVector.basis_state((0,) * layout.n, layout)


def classical(d=2, n=3):
    """ρ_c = (1/d) Σ_i |i..i><i..i|."""
    layout = SubsystemLayout((validate_dimension(d),) * int(n))
    diagonal = np.zeros(layout.total_dim)
    for i in range(layout.dims[0]):
        diagonal[np.ravel_multi_index((i,) * layout.n, layout.dims)] = 1.0 / layout.dims[0]
    return DensityOperator(np.diag(diagonal), layout)


def aharonov(d=3):
    """(1/√d!) Σ ε_{i1..id} |i1..id> on d qudits."""
    d = validate_dimension(d)
    layout = SubsystemLayout((d,) * d)
    layout.check_capacity()
    amplitudes = np.zeros(layout.total_dim, dtype=complex)
    for perm in permutations(range(d)):
        amplitudes[np.ravel_multi_index(perm, layout.dims)] = _permutation_sign(perm)
    return StateVector.from_unnormalized(amplitudes, layout)


def ame4():
    """(1/3) Σ_ij |i>|j>|i+j>|i+2j> on R, A, B, C."""
    layout = SubsystemLayout((3, 3, 3, 3))
    amplitudes = np.zeros(81, dtype=complex)
    for i in range(3):
        for j in range(3):
            amplitudes[np.ravel_multi_index((i, j, (i + j) % 3, (i + 2 * j) % 3), layout.dims)] = 1
    return StateVector.from_unnormalized(amplitudes, layout)


def ame_abc():
    """The AME state with R traced out: rank 3 on three qutrits."""
    return partial_trace(ame4(), [1, 2, 3])


def four_qutrit_z():
    """(|0120> + |1201> + |2012>)/√3, perfectly correlated in the computational basis."""
    layout = SubsystemLayout((3, 3, 3, 3))
    amplitudes = np.zeros(81, dtype=complex)
    for digits in ((0, 1, 2, 0), (1, 2, 0, 1), (2, 0, 1, 2)):
        amplitudes[np.ravel_multi_index(digits, layout.dims)] = 1
    return StateVector.from_unnormalized(amplitudes, layout)


def psi33(a=1.0, b=0.0, c=0.0):
    return psi33_vector(a, b, c)


def ghz_mes(x=(0.0, 0.0, 0.0), z=1.0):
    return ghz_mes_state(x, z)


def qutrit_mes(g=(0.0, 0.0, 0.0), k=(1, 0), a=1.0, b=0.0, c=0.0):
    return qutrit_mes_state(g, k, (a, b, c))


FAMILIES = {
    "phi_plus": (phi_plus, ("d",)),
    "ghz": (ghz, ("d", "n")),
    "w": (w_state, ("n",)),
    "product": (product, ("d", "n")),
    "classical": (classical, ("d", "n")),
    "psi33": (psi33, ("a", "b", "c")),
    "aharonov": (aharonov, ("d",)),
    "ame4": (ame4, ()),
    "ame_abc": (ame_abc, ()),
    "four_qutrit_z": (four_qutrit_z, ()),
    "ghz_mes": (ghz_mes, ("x", "z")),
    "qutrit_mes": (qutrit_mes, ("g", "k", "a", "b", "c")),
}


@dataclass(frozen=True)
class StateSpec:
    """A catalog family plus its parameters; ``p`` mixes in white noise."""

    family: str
    params: dict = field(default_factory=dict)
    p: float = None


def catalog_state(spec):
    if spec.family not in FAMILIES:
        raise InvalidParameterError(
            f"Unknown state family '{spec.family}'. Known: {', '.join(sorted(FAMILIES))}.",
            code="unknown_family",
        )
    builder, accepted = FAMILIES[spec.family]
    params = {key: value for key, value in spec.params.items() if value is not None}
    unknown = set(params) - set(accepted)
    if unknown:
        raise InvalidParameterError(
            f"Family '{spec.family}' does not take {sorted(unknown)}.", code="unknown_parameter"
        )
    state = builder(**params)
    logger.debug("Built %s%s on layout %s", spec.family, params, state.layout.dims)
    if spec.p is not None:
        return white_noise_mix(state, spec.p)
    return state
