"""
Django settings for the picardlab project.

The project has no web surface; Django supplies configuration, logging,
caching, the management-command CLI and the test runner.

For the full list of settings and their values, see
https://docs.djangoproject.com/en/6.0/ref/settings/
"""

import os
from pathlib import Path
from dotenv import load_dotenv

load_dotenv()

BASE_DIR = Path(__file__).resolve().parent.parent

SECRET_KEY = os.environ.get('SECRET_KEY', 'django-insecure-picardlab-local-only')

DEBUG = os.environ.get('DEBUG', 'False').lower() == 'true'

ALLOWED_HOSTS: list[str] = []

INSTALLED_APPS = [
    'picardlab',
]

DATABASES: dict = {}

CACHES = {
    'default': {
        'BACKEND': 'django.core.cache.backends.locmem.LocMemCache',
        'LOCATION': 'picardlab-cache',
        'TIMEOUT': int(os.environ.get('PICARDLAB_CACHE_TIMEOUT', '3600')),
        'OPTIONS': {'MAX_ENTRIES': 5000}
    }
}

PICARDLAB = {
    'THREADS': int(os.environ.get('PICARDLAB_THREADS', '1')),
    'TOLERANCE': float(os.environ.get('PICARDLAB_TOLERANCE', '1e-6')),
    'QMAX_NORM': int(os.environ.get('PICARDLAB_QMAX_NORM', '40')),
    'NMAX_NORM': int(os.environ.get('PICARDLAB_NMAX_NORM', '10')),
    'TRUNCATION_NORM': int(os.environ.get('PICARDLAB_TRUNCATION_NORM', '100000')),
    'HEIGHT': int(os.environ.get('PICARDLAB_HEIGHT', '3')),
    'CONJ_HEIGHT': int(os.environ.get('PICARDLAB_CONJ_HEIGHT', '1')),
    'SEED': int(os.environ.get('PICARDLAB_SEED', '0')),
    'ABS_TOL': float(os.environ.get('PICARDLAB_ABS_TOL', '1e-10')),
    'MAX_NODES': int(os.environ.get('PICARDLAB_MAX_NODES', '4096')),
    'SLOW_TESTS': os.environ.get('PICARDLAB_SLOW_TESTS', 'False').lower() == 'true',
    'FIXTURE_DIR': BASE_DIR / 'picardlab' / 'fixtures',
}

LANGUAGE_CODE = 'en-us'
TIME_ZONE = 'UTC'
USE_I18N = False
USE_TZ = True

LOGGING = {
    'version': 1,
    'disable_existing_loggers': False,
    'formatters': {
        'verbose': {
            'format': '{levelname} {asctime} {module} {message}',
            'style': '{',
        },
    },
    'handlers': {
        'console': {
            'class': 'logging.StreamHandler',
            'formatter': 'verbose',
        },
    },
    'root': {
        'handlers': ['console'],
        'level': 'WARNING',
    },
    'loggers': {
        'django': {
            'handlers': ['console'],
            'level': 'INFO',
            'propagate': False,
        },
        'picardlab': {
            'handlers': ['console'],
            'level': os.environ.get('PICARDLAB_LOG_LEVEL', 'INFO'),
            'propagate': False,
        },
    },
}
