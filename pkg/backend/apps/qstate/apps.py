from django.apps import AppConfig


class QstateConfig(AppConfig):
    name = "apps.qstate"
    verbose_name = "Quantum state substrate"
