from django.apps import AppConfig


class DiffusionConfig(AppConfig):
    default_auto_field = 'django.db.models.BigAutoField'
    name = 'diffusion'
    verbose_name = 'Diffusion models'
