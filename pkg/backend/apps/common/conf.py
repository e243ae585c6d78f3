"""Access to the MUBCORR settings block."""

from django.conf import settings

DEFAULTS = {
    "MAX_TOTAL_DIM": 2**20,
    "ATOL": 1e-12,
    "PROB_ATOL": 1e-10,
    "EIG_CLAMP": 1e-10,
    "PROB_ZERO": 1e-14,
    "MUB_ATOL": 1e-9,
    "OPTIMIZER": {"RESTARTS": 32, "MAX_ITERS": 4000, "TOL": 1e-8, "SEED": 0},
    "THREADS": 1,
    "BOUNDS_FILE": None,
    "CSV_DIGITS": 12,
}


def get_setting(name):
    """Return ``settings.MUBCORR[name]`` falling back to the library default."""
    configured = getattr(settings, "MUBCORR", {})
    if name not in DEFAULTS:
        raise KeyError(f"Unknown MUBCORR setting: {name}")
    value = configured.get(name, DEFAULTS[name])
    if isinstance(DEFAULTS[name], dict):
        return {**DEFAULTS[name], **value}
    return value
