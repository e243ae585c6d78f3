"""Tensor products, partial traces and local operator actions."""

from functools import reduce

import numpy as np
from scipy.stats import unitary_group

from apps.common.exceptions import DimensionMismatchError, InvalidParameterError

from .types import DensityOperator, StateVector, SubsystemLayout


def _kind(item):
    if isinstance(item, StateVector):
        return "pure"
    if isinstance(item, DensityOperator):
        return "mixed"
    return "operator"


def tensor_product(factors):
    """Kronecker product of states or plain operators, in site order."""
    factors = list(factors)
    if not factors:
        raise InvalidParameterError("tensor_product needs at least one factor.")
    kinds = {_kind(f) for f in factors}
    if len(kinds) != 1:
        raise InvalidParameterError(
            f"Cannot mix {sorted(kinds)} in one tensor product.", code="mixed_kinds"
        )
    kind = kinds.pop()

    if kind == "operator":
        return reduce(np.kron, (np.asarray(f, dtype=complex) for f in factors))

    layout = reduce(lambda a, b: a.concat(b), (f.layout for f in factors))
    if kind == "pure":
        return StateVector(reduce(np.kron, (f.amplitudes for f in factors)), layout)
    return DensityOperator(reduce(np.kron, (f.matrix for f in factors)), layout)


def ketbra(state):
    """Density operator of a pure state; mixed states pass through."""
    return state.density()


def partial_trace(state, keep):
    """Reduced state on the sites in ``keep``.

    Pure inputs are reduced from the amplitude tensor directly, without forming
    the full projector.
    """
    layout = state.layout
    keep = layout.check_sites(keep)
    traced = layout.complement(keep)
    kept_layout = layout.sub(keep)
    d_keep, d_traced = layout.dim_of(keep), layout.dim_of(traced)

    if isinstance(state, StateVector):
        block = np.transpose(state.tensor, keep + traced).reshape(d_keep, d_traced)
        return DensityOperator(block @ block.conj().T, kept_layout)

    n = layout.n
    order = keep + traced + tuple(n + s for s in keep) + tuple(n + s for s in traced)
    block = np.transpose(state.tensor, order).reshape(d_keep, d_traced, d_keep, d_traced)
    return DensityOperator(np.einsum("ajbj->ab", block), kept_layout)


def _apply_on_axis(tensor, op, axis):
    moved = np.tensordot(op, tensor, axes=([1], [axis]))
    return np.moveaxis(moved, 0, axis)


def _check_ops(ops, layout):
    ops = list(ops)
    if len(ops) != layout.n:
        raise DimensionMismatchError(f"{len(ops)} local operators for {layout.n} sites.")
    checked = []
    for site, op in enumerate(ops):
        if op is None:
            checked.append(None)
            continue
        op = np.asarray(op, dtype=complex)
        d = layout.dims[site]
        if op.shape != (d, d):
            raise DimensionMismatchError(
                f"Operator on site {site} has shape {op.shape}, expected ({d}, {d})."
            )
        checked.append(op)
    return checked


def apply_local(ops, state):
    """(O_1 ⊗ ... ⊗ O_n)|psi> without forming the Kronecker product.

    ``None`` entries stand for the identity. The result is not renormalised.
    """
    ops = _check_ops(ops, state.layout)
    tensor = state.tensor
    for site, op in enumerate(ops):
        if op is not None:
            tensor = _apply_on_axis(tensor, op, site)
    return _unnormalized_vector(tensor.reshape(-1), state.layout)


def conjugate_local(ops, state):
    """(⊗O_l) rho (⊗O_l)^† for a density operator, site by site."""
    return DensityOperator(conjugated_matrix(ops, state), state.layout)


def conjugated_matrix(ops, state):
    """Raw matrix of ``conjugate_local``, skipping state validation."""
    ops = _check_ops(ops, state.layout)
    tensor = state.tensor
    n = state.layout.n
    for site, op in enumerate(ops):
        if op is None:
            continue
        tensor = _apply_on_axis(tensor, op, site)
        tensor = _apply_on_axis(tensor, op.conj(), n + site)
    dim = state.layout.total_dim
    return tensor.reshape(dim, dim)


def _unnormalized_vector(amplitudes, layout):
    vector = object.__new__(StateVector)
    amplitudes = np.array(amplitudes, dtype=complex)
    amplitudes.setflags(write=False)
    object.__setattr__(vector, "amplitudes", amplitudes)
    object.__setattr__(vector, "layout", layout)
    return vector


def permute_sites(state, order):
    """Reorder the sites of a state; ``order[i]`` is the old index of new site i."""
    layout = state.layout
    order = tuple(int(s) for s in order)
    if sorted(order) != list(layout.sites()):
        raise InvalidParameterError(f"{order} is not a permutation of the sites.")
    new_layout = SubsystemLayout(tuple(layout.dims[s] for s in order))
    if isinstance(state, StateVector):
        return StateVector(np.transpose(state.tensor, order).reshape(-1), new_layout)
    n = layout.n
    full = order + tuple(n + s for s in order)
    dim = layout.total_dim
    return DensityOperator(np.transpose(state.tensor, full).reshape(dim, dim), new_layout)


def purity(state):
    rho = state.density().matrix
    return float(np.real(np.trace(rho @ rho)))


def fidelity_pure(psi, state):
    """<psi| rho |psi> for a pure reference state."""
    rho = state.density().matrix
    return float(np.real(np.vdot(psi.amplitudes, rho @ psi.amplitudes)))


def local_unitary(dims, rng):
    """One Haar-random unitary per site."""
    return [unitary_group.rvs(d, random_state=rng) for d in dims]


def random_state(layout, rng, pure=True, rank=None):
    """Random pure state or random mixed state of the given rank."""
    dim = layout.total_dim
    if pure:
        amplitudes = rng.normal(size=dim) + 1j * rng.normal(size=dim)
        return StateVector.from_unnormalized(amplitudes, layout)
    rank = dim if rank is None else int(rank)
    ginibre = rng.normal(size=(dim, rank)) + 1j * rng.normal(size=(dim, rank))
    rho = ginibre @ ginibre.conj().T
    rho = (rho + rho.conj().T) / 2
    return DensityOperator(rho / np.trace(rho).real, layout)


def maximal_c_value(layout):
    """Normalisation ceiling (1/n) Σ log2 min(d_i, prod of the other dims)."""
    total = layout.total_dim
    return float(np.mean([np.log2(min(d, total // d)) for d in layout.dims]))
