"""
Django settings for the logmodkit project.

Only the parts of Django used by the command line tools are configured:
the logmodapp application, logging and the test runner. There is no database.
"""

from pathlib import Path

import environ

env = environ.Env(
    DEBUG=(bool, False),
    LOGMODKIT_MAX_RANK=(int, 4),
    LOGMODKIT_BATCH_WORKERS=(int, 4),
    LOGMODKIT_LOG_LEVEL=(str, 'WARNING'),
)
# Build paths inside the project like this: BASE_DIR / 'subdir'.
BASE_DIR = Path(__file__).resolve().parent.parent
environ.Env.read_env(BASE_DIR / '.env')

SECRET_KEY = env('SECRET_KEY', default='logmodkit-local-key')

DEBUG = env('DEBUG')

ALLOWED_HOSTS = []


# Application definition

INSTALLED_APPS = [
    'logmodapp',
]

DATABASES = {}

USE_TZ = True


# Limits for the command line tools

# Largest ambient rank accepted in input documents.
LOGMODKIT_MAX_RANK = env('LOGMODKIT_MAX_RANK')

# Worker threads for --batch.
LOGMODKIT_BATCH_WORKERS = env('LOGMODKIT_BATCH_WORKERS')


# Logging
# https://docs.djangoproject.com/en/6.0/topics/logging/

LOGGING = {
    'version': 1,
    'disable_existing_loggers': False,
    'formatters': {
        'plain': {
            'format': '{levelname} {name}: {message}',
            'style': '{',
        },
    },
    'handlers': {
        'console': {
            'class': 'logging.StreamHandler',
            'formatter': 'plain',
        },
    },
    'loggers': {
        'logmodapp': {
            'handlers': ['console'],
            'level': env('LOGMODKIT_LOG_LEVEL'),
            'propagate': False,
        },
    },
}
