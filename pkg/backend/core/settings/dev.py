from .base import *

# Development settings
DEBUG = True

LOGGING["loggers"]["apps"]["level"] = "DEBUG"
