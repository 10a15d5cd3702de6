from .app import AppConfig
from .ga import GaConfig

__all__ = [
    "AppConfig",
    "GaConfig",
]
