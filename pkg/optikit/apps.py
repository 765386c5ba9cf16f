from django.apps import AppConfig


class OptikitConfig(AppConfig):
    default_auto_field = 'django.db.models.BigAutoField'
    name = 'optikit'
    verbose_name = 'LP and MILP solvers'
