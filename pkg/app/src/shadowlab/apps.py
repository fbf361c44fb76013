from django.apps import AppConfig


class ShadowlabConfig(AppConfig):
    default_auto_field = "django.db.models.BigAutoField"
    name = "shadowlab"
    verbose_name = "Shadows of lattices and codes"
