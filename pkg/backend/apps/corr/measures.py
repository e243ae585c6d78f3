"""Mutual information across cuts, C_N for fixed settings, J_N and Holevo's χ."""

import logging
from dataclasses import dataclass, field
from itertools import permutations

import numpy as np

from apps.common.exceptions import DimensionMismatchError, InvalidParameterError
from apps.mub.types import overlaps
from apps.qstate.entropy import entropy_of, von_neumann_entropy
from apps.qstate.ops import maximal_c_value
from apps.qstate.types import DensityOperator, ProbDist

from .distribution import joint_distribution, setting_distribution

logger = logging.getLogger(__name__)


def mutual_information_cut(p, layout, sites):
    """I(A:B) = H(A) + H(B) - H(AB) in bits for the cut A = ``sites``."""
    sites = layout.check_sites(sites)
    rest = layout.complement(sites)
    if not rest:
        raise InvalidParameterError("The cut must leave a nonempty complement.", code="cut")
    if p.probs.ndim != layout.n:
        raise DimensionMismatchError(f"Distribution has {p.probs.ndim} axes for {layout.n} sites.")
    value = entropy_of(p.marginal(sites)) + entropy_of(p.marginal(rest)) - entropy_of(p.probs)
    return max(value, 0.0)


def site_informations(p, layout):
    """I(l : rest) for every site l."""
    return np.array([mutual_information_cut(p, layout, [site]) for site in layout.sites()])


@dataclass
class CorrelationReport:
    """Per-measurement, per-site mutual informations and their average."""

    mutual_informations: np.ndarray
    setting: dict
    maximal_value: float
    optimizer: dict = field(default_factory=dict)

    @property
    def c_value(self):
        return float(np.mean(self.mutual_informations))

    @property
    def per_measurement(self):
        """Q_k: the site average for each measurement k."""
        return self.mutual_informations.mean(axis=1)

    @property
    def N(self):
        return self.mutual_informations.shape[0]

    @property
    def n(self):
        return self.mutual_informations.shape[1]

    def normalized(self):
        return self.c_value / self.maximal_value if self.maximal_value else 0.0


def c_n_given(state, setting, optimizer=None):
    """C_N(ρ, setting): the average over k and l of I(B_k^(l) : B_k^(rest))."""
    layout = state.layout
    if layout.n < 2:
        raise InvalidParameterError("C_N needs at least two sites.", code="too_few_sites")
    setting.check_layout(layout)
    table = np.array(
        [
            site_informations(setting_distribution(state, setting, k), layout)
            for k in range(setting.N)
        ]
    )
    return CorrelationReport(
        mutual_informations=table,
        setting=setting.describe(),
        maximal_value=maximal_c_value(layout),
        optimizer=optimizer or {},
    )


def q_basis(state, bases):
    """Per-site I values and their average for one basis per site."""
    p = joint_distribution(state, bases)
    values = site_informations(p, state.layout)
    return {"per_site": values, "value": float(values.mean())}


def check_j_layout(layout):
    d = layout.dims[0]
    if layout.dims != (d,) * d:
        raise DimensionMismatchError(
            f"J_N needs d sites of dimension d, got layout {layout.dims}.", code="j_layout"
        )
    return d


def antisymmetric_weight(p, d):
    """A_B = Σ |ε_{i1..id}| p(i1..id): the weight on outcomes that are permutations."""
    return float(sum(p.probs[perm] for perm in permutations(range(d))))


def j_n_value(state, mub_set):
    """J_N = Σ_k A_{B_k} with the same basis B_k on every site."""
    d = check_j_layout(state.layout)
    if mub_set.d != d:
        raise DimensionMismatchError(f"Basis dimension {mub_set.d} for d={d}.")
    return sum(
        antisymmetric_weight(joint_distribution(state, [basis] * d), d) for basis in mub_set.bases
    )


def holevo_chi(ensemble):
    """χ = S(Σ p_i ρ_i) - Σ p_i S(ρ_i) for ``[(p_i, state_i), ...]``."""
    ensemble = list(ensemble)
    if not ensemble:
        raise InvalidParameterError("Empty ensemble.", code="empty_ensemble")
    weights = ProbDist(np.array([w for w, _ in ensemble])).probs
    states = [s.density() for _, s in ensemble]
    if len({s.layout.dims for s in states}) != 1:
        raise DimensionMismatchError("Ensemble members live on different spaces.")
    average = DensityOperator(sum(w * s.matrix for w, s in zip(weights, states)), states[0].layout)
    chi = von_neumann_entropy(average) - sum(
        w * von_neumann_entropy(s) for w, s in zip(weights, states)
    )
    return max(float(chi), 0.0)


def maassen_uffink_bound(first, second):
    """-log2 max |<b1|b2>|², the two-basis entropic uncertainty bound."""
    return float(-np.log2(overlaps(first, second).max()))
