from django.apps import AppConfig


class MubConfig(AppConfig):
    name = "apps.mub"
    verbose_name = "Mutually unbiased bases and measurements"
