"""
Django settings for the Milnor lab
"""

from pathlib import Path

from decouple import config

BASE_DIR = Path(__file__).resolve().parent.parent

SECRET_KEY = config('SECRET_KEY', default='django-insecure-milnor-lab-local-only')

DEBUG = config('DEBUG', default=False, cast=bool)

INSTALLED_APPS = [
    # Third-party
    'rest_framework',
    # Local apps
    'milnor',
]

# The lab keeps no persistent state; every value is recomputed.
DATABASES = {}

LANGUAGE_CODE = 'en-us'
TIME_ZONE = 'UTC'
USE_I18N = False
USE_TZ = True

# REST Framework (used for serialization only; no auth apps are installed)
REST_FRAMEWORK = {
    'UNAUTHENTICATED_USER': None,
    'COMPACT_JSON': True,
    'UNICODE_JSON': False,
}

# Milnor lab
MILNOR_DEFAULT_P = config('MILNOR_DEFAULT_P', default=3, cast=int)
MILNOR_DEFAULT_N = config('MILNOR_DEFAULT_N', default=3, cast=int)
MILNOR_VERIFY_PROFILE = config('MILNOR_VERIFY_PROFILE', default='quick')
MILNOR_SWEEP_WORKERS = config('MILNOR_SWEEP_WORKERS', default=1, cast=int)
MILNOR_SELF_CHECK = config('MILNOR_SELF_CHECK', default=False, cast=bool)
MILNOR_SEED = config('MILNOR_SEED', default=0, cast=int)

MILNOR_LOG_LEVEL = config('MILNOR_LOG_LEVEL', default='INFO')
MILNOR_LOG_FILE = config('MILNOR_LOG_FILE', default='')

# Logging
LOGGING = {
    'version': 1,
    'disable_existing_loggers': False,
    'formatters': {
        'verbose': {
            'format': '{levelname} {asctime} {module} {process:d} {message}',
            'style': '{',
        },
        'simple': {
            'format': '{levelname} {message}',
            'style': '{',
        },
    },
    'handlers': {
        'console': {
            'class': 'logging.StreamHandler',
            'formatter': 'simple',
            'level': 'WARNING',
        },
    },
    'loggers': {
        'milnor': {
            'handlers': ['console'],
            'level': MILNOR_LOG_LEVEL,
            'propagate': False,
        },
    },
}

if MILNOR_LOG_FILE:
    LOGGING['handlers']['file'] = {
        'level': MILNOR_LOG_LEVEL,
        'class': 'logging.FileHandler',
        'filename': MILNOR_LOG_FILE,
        'formatter': 'verbose',
    }
    LOGGING['loggers']['milnor']['handlers'].append('file')
