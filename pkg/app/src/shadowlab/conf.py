"""Access to shadowlab settings with defaults when Django is not configured."""

from pathlib import Path

from django.conf import settings

DEFAULTS = {
    "SHADOWLAB_DATA": str(Path(__file__).resolve().parent / "data"),
    "SHADOWLAB_PREC": 100,
    "SHADOWLAB_ENUM_NORM": 4,
    "SHADOWLAB_MAX_CODE_DIM": 28,
}


def get_setting(name: str):
    if settings.configured:
        return getattr(settings, name, DEFAULTS[name])
    return DEFAULTS[name]
