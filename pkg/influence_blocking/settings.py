"""
Django settings for the influence_blocking project.

Everything that varies between a laptop run and a long benchmark sweep is
read from the environment (or a ``.env`` file) through python-decouple.
Domain tunables are grouped in ``INFLUENCE_BLOCKING`` and read back with
``influence_blocking.conf.app_setting``.
"""

from pathlib import Path
from decouple import config

# Build paths inside the project like this: BASE_DIR / 'subdir'.
BASE_DIR = Path(__file__).resolve().parent.parent


# SECURITY WARNING: keep the secret key used in production secret!
SECRET_KEY = config('SECRET_KEY', default='django-insecure-influence-blocking-local-only')

DEBUG = config('DEBUG', default=True, cast=bool)

ALLOWED_HOSTS = config('ALLOWED_HOSTS', default='localhost,127.0.0.1', cast=lambda v: [s.strip() for s in v.split(',')])


# Application definition

INSTALLED_APPS = [
    'django.contrib.auth',
    'django.contrib.contenttypes',

    # Third-party apps
    'rest_framework',
    'drf_spectacular',

    # Local apps
    'netgraph',
    'diffusion',
    'optikit',
    'adversary',
    'blockade',
    'baselines',
    'bench',
]

MIDDLEWARE = [
    'django.middleware.security.SecurityMiddleware',
    'django.middleware.common.CommonMiddleware',
]

ROOT_URLCONF = 'influence_blocking.urls'

WSGI_APPLICATION = 'influence_blocking.wsgi.application'


# Database
# Nothing is persisted; results go to CSV. Django still wants a default entry.

DATABASES = {
    'default': {
        'ENGINE': 'django.db.backends.sqlite3',
        'NAME': ':memory:',
    }
}


# Internationalization

LANGUAGE_CODE = 'en-us'

TIME_ZONE = 'UTC'

USE_I18N = False

USE_TZ = True

DEFAULT_AUTO_FIELD = 'django.db.models.BigAutoField'

# Django REST Framework
REST_FRAMEWORK = {
    'DEFAULT_AUTHENTICATION_CLASSES': [],
    'DEFAULT_PERMISSION_CLASSES': (
        'rest_framework.permissions.AllowAny',
    ),
    'UNAUTHENTICATED_USER': None,
    'DEFAULT_RENDERER_CLASSES': [
        'rest_framework.renderers.JSONRenderer',
    ],
    'DEFAULT_SCHEMA_CLASS': 'drf_spectacular.openapi.AutoSchema',
}

# Spectacular Settings (API Documentation)
SPECTACULAR_SETTINGS = {
    'TITLE': 'Influence Blocking API',
    'DESCRIPTION': 'Node-blocking defenses against adversarial influence maximization',
    'VERSION': '1.0.0',
    'SERVE_INCLUDE_SCHEMA': False,
}


def _optional_float(value):
    return float(value) if value not in (None, '', 'none', 'None') else None


# Domain settings
INFLUENCE_BLOCKING = {
    # Solver
    'SOLVER_BACKEND': config('SOLVER_BACKEND', default='reference'),
    'MILP_ABS_GAP': config('MILP_ABS_GAP', default=1e-6, cast=float),
    'MILP_REL_GAP': config('MILP_REL_GAP', default=1e-9, cast=float),
    'MILP_NODE_LIMIT': config('MILP_NODE_LIMIT', default=200000, cast=int),
    'MILP_TIME_LIMIT': config('MILP_TIME_LIMIT', default='', cast=_optional_float),

    # Diffusion
    'EVAL_REPLICAS': config('EVAL_REPLICAS', default=1000, cast=int),
    'GREEDY_REPLICAS': config('GREEDY_REPLICAS', default=200, cast=int),
    'INFLUENCE_CENTRALITY_REPLICAS': config('INFLUENCE_CENTRALITY_REPLICAS', default=100, cast=int),

    # Graphs
    'FOREST_FIRE_FORWARD': config('FOREST_FIRE_FORWARD', default=0.7, cast=float),
    'PAGERANK_DAMPING': 0.85,
    'PAGERANK_TOL': 1e-10,
    'PAGERANK_MAX_ITER': 200,

    # Oracles
    'BRUTE_FORCE_BR_LIMIT': config('BRUTE_FORCE_BR_LIMIT', default=10 ** 6, cast=int),
    'BRUTE_FORCE_DEFENSE_LIMIT': config('BRUTE_FORCE_DEFENSE_LIMIT', default=10 ** 7, cast=int),

    # Constraint generation
    'CG_MAX_ITERATIONS': config('CG_MAX_ITERATIONS', default=500, cast=int),
    'CG_TIME_LIMIT': config('CG_TIME_LIMIT', default='', cast=_optional_float),

    # Bench
    'BENCH_WORKERS': config('BENCH_WORKERS', default=1, cast=int),
    'BENCH_OUTPUT_DIR': config('BENCH_OUTPUT_DIR', default=str(BASE_DIR / 'results')),
    'DATASET_DIR': config('DATASET_DIR', default=str(BASE_DIR / 'datasets')),
}

# Logging
LOG_LEVEL = config('LOG_LEVEL', default='INFO')

LOGGING = {
    'version': 1,
    'disable_existing_loggers': False,
    'formatters': {
        'verbose': {
            'format': '{levelname} {asctime} {module} {process:d} {thread:d} {message}',
            'style': '{',
        },
    },
    'handlers': {
        'console': {
            'level': 'DEBUG',
            'class': 'logging.StreamHandler',
            'formatter': 'verbose',
        },
    },
    'loggers': {
        'django': {
            'handlers': ['console'],
            'level': 'INFO',
            'propagate': True,
        },
        **{
            app: {
                'handlers': ['console'],
                'level': LOG_LEVEL,
                'propagate': False,
            }
            for app in ('netgraph', 'diffusion', 'optikit', 'adversary', 'blockade', 'baselines', 'bench')
        },
    },
}
