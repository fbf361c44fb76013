from pathlib import Path

from decouple import config

# Build paths inside the project like this: BASE_DIR / 'subdir'.
BASE_DIR = Path(__file__).resolve().parent.parent.parent


# SECURITY WARNING: keep the secret key used in production secret!
SECRET_KEY = config(
    "SECRET_KEY", default="django-insecure-test-key-for-development-only"
)

ALLOWED_HOSTS: list[str] = []


# Application definition

INSTALLED_APPS = [
    "django.contrib.contenttypes",
    "django.contrib.auth",
    "rest_framework",
    "shadowlab",
]

# Database
# Nothing is persisted.

DATABASES = {
    "default": {
        "ENGINE": "django.db.backends.sqlite3",
        "NAME": BASE_DIR / "db.sqlite3",
    }
}


# Internationalization

LANGUAGE_CODE = "en-us"

TIME_ZONE = "UTC"

USE_I18N = False

USE_TZ = True

DEFAULT_AUTO_FIELD = "django.db.models.BigAutoField"


# Shadow theory engine
# Every value may be overridden from the environment.

# Directory holding the catalog glue files; defaults to the embedded copy.
SHADOWLAB_DATA = config(
    "SHADOWLAB_DATA", default=str(BASE_DIR / "shadowlab" / "data")
)

# Series precision in quarter-exponents of q.
SHADOWLAB_PREC = config("SHADOWLAB_PREC", default=100, cast=int)

# Highest norm compared against brute-force enumeration in lift checks.
SHADOWLAB_ENUM_NORM = config("SHADOWLAB_ENUM_NORM", default=4, cast=int)

# Largest code dimension swept exhaustively.
SHADOWLAB_MAX_CODE_DIM = config("SHADOWLAB_MAX_CODE_DIM", default=28, cast=int)


# Logging

LOGGING = {
    "version": 1,
    "disable_existing_loggers": False,
    "formatters": {
        "verbose": {
            "format": "{asctime} [{levelname}] {name}: {message}",
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
        "shadowlab": {
            "handlers": ["console"],
            "level": config("SHADOWLAB_LOG_LEVEL", default="WARNING"),
            "propagate": False,
        },
    },
}
