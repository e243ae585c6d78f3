from django.apps import AppConfig


class StatesConfig(AppConfig):
    name = "apps.states"
    verbose_name = "State catalog"
