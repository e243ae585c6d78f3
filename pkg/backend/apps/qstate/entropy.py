"""Shannon and von Neumann entropies in bits."""

import logging

import numpy as np
from scipy.special import entr

from apps.common.conf import get_setting

from .types import ProbDist

logger = logging.getLogger(__name__)

LN2 = np.log(2.0)


def entropy_of(probs):
    """-Σ p log2 p over a raw array; entries below PROB_ZERO count as zero."""
    probs = np.asarray(probs, dtype=float).reshape(-1)
    probs = np.where(probs < get_setting("PROB_ZERO"), 0.0, probs)
    return float(entr(probs).sum() / LN2)


def shannon_entropy(p):
    if isinstance(p, ProbDist):
        return entropy_of(p.probs)
    return entropy_of(ProbDist(p).probs)


def von_neumann_entropy(rho):
    """Entropy of the spectrum after clamping round-off negatives to zero."""
    eigenvalues = rho.density().eigenvalues
    clamp = get_setting("EIG_CLAMP")
    if eigenvalues.min() < -clamp:
        logger.warning("Eigenvalue %.3e below clamp window -%.0e", eigenvalues.min(), clamp)
    return entropy_of(np.clip(eigenvalues, 0.0, None))
