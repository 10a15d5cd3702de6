from dishka import Provider, Scope, from_context, provide

from src.core.config import AppConfig, GaConfig


class ConfigProvider(Provider):
    scope = Scope.APP

    config = from_context(provides=AppConfig)

    @provide
    def ga_defaults(self) -> GaConfig:
        return GaConfig()
