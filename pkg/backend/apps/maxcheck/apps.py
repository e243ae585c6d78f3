from django.apps import AppConfig


class MaxcheckConfig(AppConfig):
    name = "apps.maxcheck"
    verbose_name = "Maximal correlation certifiers"
