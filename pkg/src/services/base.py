from abc import ABC

from src.core.config import AppConfig


class BaseService(ABC):
    config: AppConfig

    def __init__(self, config: AppConfig) -> None:
        self.config = config
