"""Immutable value types for multipartite states.

Sites are indexed from 0. Flattened amplitude, matrix and outcome indices are
row-major with site 0 the most significant index, i.e. ``numpy.reshape`` with
the layout's ``dims`` recovers one axis per site.
"""

from dataclasses import dataclass
from functools import cached_property
from itertools import product

import numpy as np

from apps.common.conf import get_setting
from apps.common.exceptions import (
    DimensionMismatchError,
    InvalidParameterError,
    InvalidStateError,
)
from apps.common.validators import DensityMatrixValidator


def _frozen(array):
    array.setflags(write=False)
    return array


@dataclass(frozen=True)
class SubsystemLayout:
    """Ordered local dimensions of an n-site system."""

    dims: tuple

    def __post_init__(self):
        dims = tuple(int(d) for d in self.dims)
        if not dims:
            raise InvalidParameterError("A layout needs at least one site.", code="empty_layout")
        if any(d < 2 for d in dims):
            raise InvalidParameterError(f"Local dimensions must be >= 2, got {dims}.")
        object.__setattr__(self, "dims", dims)

    @property
    def n(self):
        return len(self.dims)

    @property
    def total_dim(self):
        return int(np.prod(self.dims))

    def sites(self):
        return range(self.n)

    def check_sites(self, sites, allow_empty=False):
        """Return ``sites`` as a sorted tuple after range and emptiness checks."""
        sites = tuple(sorted(set(int(s) for s in sites)))
        if not sites and not allow_empty:
            raise InvalidParameterError("Site subset must not be empty.", code="empty_sites")
        for site in sites:
            if not 0 <= site < self.n:
                raise InvalidParameterError(
                    f"Site {site} out of range for {self.n} sites.", code="site_range"
                )
        return sites

    def complement(self, sites):
        sites = set(sites)
        return tuple(s for s in self.sites() if s not in sites)

    def sub(self, sites):
        return SubsystemLayout(tuple(self.dims[s] for s in sites))

    def dim_of(self, sites):
        return int(np.prod([self.dims[s] for s in sites])) if sites else 1

    def concat(self, other):
        return SubsystemLayout(self.dims + other.dims)

    def check_capacity(self):
        cap = get_setting("MAX_TOTAL_DIM")
        if self.total_dim > cap:
            raise InvalidParameterError(
                f"Total dimension {self.total_dim} exceeds MAX_TOTAL_DIM={cap}.",
                code="too_large",
            )

    def is_uniform(self):
        return len(set(self.dims)) == 1


@dataclass(frozen=True, eq=False)
class StateVector:
    """A normalised pure state."""

    amplitudes: np.ndarray
    layout: SubsystemLayout

    def __post_init__(self):
        amplitudes = np.array(self.amplitudes, dtype=complex).reshape(-1)
        self.layout.check_capacity()
        if amplitudes.size != self.layout.total_dim:
            raise DimensionMismatchError(
                f"{amplitudes.size} amplitudes for total dimension {self.layout.total_dim}."
            )
        norm = np.vdot(amplitudes, amplitudes).real
        if abs(norm - 1.0) > get_setting("ATOL") * max(1.0, np.sqrt(amplitudes.size)):
            raise InvalidStateError(f"State has squared norm {norm!r}.", code="not_normalized")
        object.__setattr__(self, "amplitudes", _frozen(amplitudes))

    @classmethod
    def from_unnormalized(cls, amplitudes, layout):
        amplitudes = np.asarray(amplitudes, dtype=complex).reshape(-1)
        norm = np.linalg.norm(amplitudes)
        if norm == 0:
            raise InvalidStateError("Zero vector cannot be normalised.", code="zero_vector")
        return cls(amplitudes / norm, layout)

    @classmethod
    def basis_state(cls, digits, layout):
        """Computational basis state ``|digits>``."""
        layout.check_capacity()
        amplitudes = np.zeros(layout.total_dim, dtype=complex)
        amplitudes[np.ravel_multi_index(tuple(digits), layout.dims)] = 1.0
        return cls(amplitudes, layout)

    @property
    def tensor(self):
        return self.amplitudes.reshape(self.layout.dims)

    def density(self):
        return DensityOperator(np.outer(self.amplitudes, self.amplitudes.conj()), self.layout)

    def norm(self):
        return float(np.linalg.norm(self.amplitudes))


@dataclass(frozen=True, eq=False)
class DensityOperator:
    """A (possibly mixed) state as a dense matrix."""

    matrix: np.ndarray
    layout: SubsystemLayout

    def __post_init__(self):
        matrix = np.array(self.matrix, dtype=complex)
        self.layout.check_capacity()
        dim = self.layout.total_dim
        if matrix.shape != (dim, dim):
            raise DimensionMismatchError(f"Matrix shape {matrix.shape} for total dimension {dim}.")
        DensityMatrixValidator().validate(matrix)
        object.__setattr__(self, "matrix", _frozen(matrix))

    @property
    def tensor(self):
        return self.matrix.reshape(self.layout.dims + self.layout.dims)

    def density(self):
        return self

    @cached_property
    def eigenvalues(self):
        return np.linalg.eigvalsh(self.matrix)


@dataclass(frozen=True, eq=False)
class ProbDist:
    """Probability table over outcome tuples, one axis per site."""

    probs: np.ndarray

    def __post_init__(self):
        probs = np.array(self.probs, dtype=float)
        if probs.ndim == 0:
            raise InvalidParameterError("A distribution needs at least one axis.")
        if probs.min() < -1e-12:
            raise InvalidParameterError(
                f"Negative probability {probs.min()!r}.", code="negative_probability"
            )
        probs = np.clip(probs, 0.0, None)
        total = probs.sum()
        if abs(total - 1.0) > get_setting("PROB_ATOL"):
            raise InvalidParameterError(f"Probabilities sum to {total!r}.", code="bad_sum")
        object.__setattr__(self, "probs", _frozen(probs))

    @property
    def shape(self):
        return self.probs.shape

    @property
    def labels(self):
        return list(product(*(range(k) for k in self.shape)))

    def flat(self):
        return self.probs.reshape(-1)

    def marginal(self, sites):
        """Marginal table over ``sites`` (kept in ascending order)."""
        drop = tuple(axis for axis in range(self.probs.ndim) if axis not in set(sites))
        return self.probs.sum(axis=drop) if drop else self.probs
