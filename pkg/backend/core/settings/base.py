"""
Django settings for the mubcorr project.

The project has no database and no HTTP surface: Django provides the settings
layer, the logging configuration and the management-command CLI, and DRF
provides the serializers for the JSON document formats.

For the full list of Django settings and their values, see
https://docs.djangoproject.com/en/5.0/ref/settings/
"""

import os
from pathlib import Path

# Build paths inside the project like this: BASE_DIR / 'subdir'.
BASE_DIR = Path(__file__).resolve().parent.parent.parent

# No sessions, no signing: the key only satisfies Django's startup checks.
SECRET_KEY = os.environ.get("MUBCORR_SECRET_KEY", "mubcorr-local-only-not-a-secret")

DEBUG = False

ALLOWED_HOSTS = []


# Application definition

INSTALLED_APPS = [
    "rest_framework",
    # Project apps
    "apps.common",
    "apps.qstate",
    "apps.mub",
    "apps.corr",
    "apps.maxcheck",
    "apps.detect",
    "apps.states",
    "apps.cli",
]

DATABASES = {}

REST_FRAMEWORK = {
    "DEFAULT_RENDERER_CLASSES": [
        "rest_framework.renderers.JSONRenderer",
    ],
    "UNAUTHENTICATED_USER": None,
    "COERCE_DECIMAL_TO_STRING": False,
}


# Numerical library configuration
# Every tunable of the library is read through apps.common.conf.get_setting.

MUBCORR = {
    # Dense states larger than this are rejected; large-d scans use closed forms.
    "MAX_TOTAL_DIM": 2**20,
    # Normalisation / hermiticity / trace tolerance for states.
    "ATOL": 1e-12,
    # Probability distributions must sum to one within this tolerance.
    "PROB_ATOL": 1e-10,
    # Eigenvalues down to -EIG_CLAMP are clamped to zero before entropies.
    "EIG_CLAMP": 1e-10,
    # Probabilities below this are exact zeros in entropy evaluation.
    "PROB_ZERO": 1e-14,
    # Basis orthonormality and mutual-unbiasedness tolerance.
    "MUB_ATOL": 1e-9,
    "OPTIMIZER": {
        "RESTARTS": 32,
        "MAX_ITERS": 4000,
        "TOL": 1e-8,
        "SEED": 0,
    },
    "THREADS": int(os.environ.get("MUBCORR_THREADS", os.cpu_count() or 1)),
    "BOUNDS_FILE": os.environ.get("MUBCORR_BOUNDS_FILE") or None,
    "CSV_DIGITS": 12,
}


# Logging
# https://docs.djangoproject.com/en/5.0/topics/logging/

LOGGING = {
    "version": 1,
    "disable_existing_loggers": False,
    "formatters": {
        "verbose": {
            "format": "{asctime} {levelname} {name} {message}",
            "style": "{",
        },
    },
    "handlers": {
        "console": {
            "class": "logging.StreamHandler",
            "formatter": "verbose",
        },
    },
    "loggers": {
        "apps": {
            "handlers": ["console"],
            "level": "INFO",
            "propagate": False,
        },
    },
}


# Internationalization
# https://docs.djangoproject.com/en/5.0/topics/i18n/

LANGUAGE_CODE = "en-us"

TIME_ZONE = "UTC"

USE_I18N = False

USE_TZ = True
