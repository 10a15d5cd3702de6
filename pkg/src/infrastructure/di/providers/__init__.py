from dishka import Provider

from .config import ConfigProvider
from .services import ServicesProvider


def get_providers() -> list[Provider]:
    return [
        ConfigProvider(),
        ServicesProvider(),
    ]
