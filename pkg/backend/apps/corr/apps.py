from django.apps import AppConfig


class CorrConfig(AppConfig):
    name = "apps.corr"
    verbose_name = "Correlation functionals"
