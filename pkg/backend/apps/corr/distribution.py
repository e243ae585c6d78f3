"""Joint outcome distributions of local measurements."""

from string import ascii_letters

import numpy as np

from apps.common.exceptions import DimensionMismatchError
from apps.mub.types import Basis
from apps.qstate.ops import apply_local, conjugated_matrix
from apps.qstate.types import ProbDist, StateVector


def _unitaries(bases, layout):
    unitaries = [b.vectors if isinstance(b, Basis) else np.asarray(b, dtype=complex) for b in bases]
    if len(unitaries) != layout.n:
        raise DimensionMismatchError(f"{len(unitaries)} bases for {layout.n} sites.")
    for site, u in enumerate(unitaries):
        if u.shape != (layout.dims[site],) * 2:
            raise DimensionMismatchError(f"Basis on site {site} has shape {u.shape}.")
    return unitaries


def joint_distribution(state, bases):
    """p(i_1..i_n) for measuring site l in ``bases[l]``.

    Each site is rotated into its measurement basis by B_l^† and the
    computational-basis populations are read off.
    """
    layout = state.layout
    adjoints = [u.conj().T for u in _unitaries(bases, layout)]
    if isinstance(state, StateVector):
        probs = np.abs(apply_local(adjoints, state).amplitudes) ** 2
    else:
        probs = np.real(np.diag(conjugated_matrix(adjoints, state)))
    return ProbDist(probs.reshape(layout.dims))


def povm_distribution(state, povms):
    """p(i_1..i_n) = tr(ρ ⊗_l P_l(i_l)) for one POVM per site."""
    layout = state.layout
    if len(povms) != layout.n:
        raise DimensionMismatchError(f"{len(povms)} POVMs for {layout.n} sites.")
    n = layout.n
    ket, bra, out = ascii_letters[:n], ascii_letters[n : 2 * n], ascii_letters[2 * n : 3 * n]
    operands = [state.density().tensor]
    subscripts = [ket + bra]
    for site, elements in enumerate(povms):
        stacked = np.asarray(elements, dtype=complex)
        if stacked.shape[1:] != (layout.dims[site],) * 2:
            raise DimensionMismatchError(f"POVM on site {site} has shape {stacked.shape}.")
        operands.append(stacked)
        subscripts.append(out[site] + bra[site] + ket[site])
    expression = ",".join(subscripts) + "->" + out
    probs = np.real(np.einsum(expression, *operands, optimize=True))
    return ProbDist(probs)


def setting_distribution(state, setting, k):
    """Distribution of the k-th measurement of a MeasurementSetting."""
    measurements = setting.measurements(k)
    if setting.is_projective:
        return joint_distribution(state, measurements)
    return povm_distribution(state, measurements)
