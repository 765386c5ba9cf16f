from django.apps import AppConfig


class BlockadeConfig(AppConfig):
    default_auto_field = 'django.db.models.BigAutoField'
    name = 'blockade'
    verbose_name = 'Defender blocking models'
