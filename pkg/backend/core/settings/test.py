from .base import *

# Test settings
DEBUG = False

LOGGING["loggers"]["apps"]["level"] = "WARNING"

# Deterministic pool size and no user registry regardless of the environment.
MUBCORR = {
    **MUBCORR,
    "THREADS": 2,
    "BOUNDS_FILE": None,
}
