"""Structural test for maximally correlated mixed states.

A bipartite ρ_AB on C^d' ⊗ C^d (d' ≥ d) gives log2 d bits of correlation on B
for every measurement iff it decomposes as

    ρ_AB = Σ_k q_k (V_k ⊗ I) |φ+><φ+| (V_k ⊗ I)^†

with isometries V_k: C^d → C^d' whose images are pairwise orthogonal. The
multipartite necessary condition applies the same test to every one-vs-rest
cut.
"""

import logging
from dataclasses import dataclass

import numpy as np

from apps.common.exceptions import CertificationError, DimensionMismatchError, InvalidParameterError
from apps.qstate.ops import permute_sites
from apps.qstate.types import DensityOperator, SubsystemLayout

logger = logging.getLogger(__name__)

DECOMPOSITION_TOL = 1e-8
RANK_TOL = 1e-10


@dataclass
class MaxEntDecomposition:
    weights: np.ndarray
    isometries: list
    residual: float
    split: tuple

    def reconstruct(self):
        d_a, d = self.split
        phi = np.eye(d, dtype=complex).reshape(-1) / np.sqrt(d)
        rho = np.zeros((d_a * d, d_a * d), dtype=complex)
        for weight, isometry in zip(self.weights, self.isometries):
            vector = np.kron(isometry, np.eye(d)) @ phi
            rho += weight * np.outer(vector, vector.conj())
        return rho


def _resolve_split(rho, split):
    total = rho.layout.total_dim
    if split is None:
        d = rho.layout.dims[-1]
        split = (total // d, d)
    d_a, d = (int(x) for x in split)
    if d_a * d != total:
        raise DimensionMismatchError(f"Split {split} does not factor total dimension {total}.")
    if d_a < d:
        raise InvalidParameterError(f"Need d' ≥ d, got split {split}.", code="split")
    return d_a, d


def _degenerate_blocks(values, tol):
    blocks, start = [], 0
    for index in range(1, len(values) + 1):
        if index == len(values) or abs(values[index] - values[start]) > tol:
            blocks.append(range(start, index))
            start = index
    return blocks


def _canonicalize(matrices, values, tol):
    """Rotate each degenerate eigenspace so the weighted A-side Gram matrix is diagonal.

    The weight is D = diag(1, 2, ..., d') on A; the result fixes the isometries
    reported for a degenerate spectrum.
    """
    d_a = matrices[0].shape[0]
    weight = np.diag(np.arange(1, d_a + 1, dtype=float))
    out = list(matrices)
    for block in _degenerate_blocks(values, tol):
        if len(block) < 2:
            continue
        members = [matrices[i] for i in block]
        gram = np.array(
            [[np.trace(weight @ mj @ mi.conj().T) for mj in members] for mi in members]
        )
        _, rotation = np.linalg.eigh((gram + gram.conj().T) / 2)
        for column, index in enumerate(block):
            out[index] = sum(rotation[row, column] * members[row] for row in range(len(block)))
    return out


def _phase_fix(isometry):
    flat = isometry.reshape(-1)
    pivot = flat[np.argmax(np.abs(flat) > 1e-12)]
    return isometry * (abs(pivot) / pivot)


def lemma1_check(rho, split=None, tol=DECOMPOSITION_TOL):
    """Decompose ρ_AB into weighted, orthogonal-image isometries applied to φ+.

    Raises CertificationError when ρ_AB admits no such decomposition.
    """
    rho = rho.density()
    d_a, d = _resolve_split(rho, split)

    values, vectors = np.linalg.eigh(rho.matrix)
    order = np.argsort(values)[::-1]
    values, vectors = values[order], vectors[:, order]
    keep = values > RANK_TOL
    values, vectors = values[keep], vectors[:, keep]

    matrices = [vectors[:, i].reshape(d_a, d) for i in range(len(values))]
    matrices = _canonicalize(matrices, values, tol)

    identity = np.eye(d) / d
    residual = 0.0
    for i, mi in enumerate(matrices):
        residual = max(residual, np.linalg.norm(mi.conj().T @ mi - identity))
        for mj in matrices[i + 1 :]:
            residual = max(residual, np.linalg.norm(mi.conj().T @ mj))

    decomposition = MaxEntDecomposition(
        weights=values,
        isometries=[_phase_fix(np.sqrt(d) * m) for m in matrices],
        residual=float(residual),
        split=(d_a, d),
    )
    reconstruction = float(np.linalg.norm(decomposition.reconstruct() - rho.matrix))
    decomposition.residual = max(decomposition.residual, reconstruction)
    logger.debug(
        "Decomposition test on split %s: rank %d residual %.2e",
        (d_a, d),
        len(values),
        decomposition.residual,
    )
    if decomposition.residual > tol:
        raise CertificationError(
            f"State does not decompose into maximally entangled pieces on split {(d_a, d)}.",
            code="NOT_DECOMPOSABLE",
            residuals={"residual": decomposition.residual, "rank": len(values)},
        )
    return decomposition


def one_vs_rest(rho, site):
    """ρ regrouped as (rest, site) with ``site`` moved last."""
    layout = rho.layout
    site = layout.check_sites([site])[0]
    order = list(layout.complement([site])) + [site]
    moved = permute_sites(rho.density(), order)
    d = layout.dims[site]
    return DensityOperator(moved.matrix, SubsystemLayout((layout.total_dim // d, d)))


def lemma2_necessary_check(rho, tol=DECOMPOSITION_TOL):
    """Decomposition test across every one-vs-rest cut.

    All-True is necessary for maximal C_N; a single False rules it out.
    """
    flags = []
    for site in rho.layout.sites():
        cut = one_vs_rest(rho, site)
        try:
            lemma1_check(cut, tol=tol)
        except (CertificationError, InvalidParameterError):
            flags.append(False)
        else:
            flags.append(True)
    return flags
