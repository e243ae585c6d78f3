from django.apps import AppConfig


class DetectConfig(AppConfig):
    name = "apps.detect"
    verbose_name = "Entanglement detection thresholds"
