from dishka import Provider, Scope, provide

from src.services.benchmark import BenchmarkService
from src.services.features import FeatureService
from src.services.fusion import FusionService
from src.services.image import ImageService
from src.services.metrics import MetricsService
from src.services.optimizer import OptimizerService
from src.services.phantom import PhantomService
from src.services.wavelet import WaveletService


class ServicesProvider(Provider):
    scope = Scope.APP

    image_service = provide(source=ImageService)
    wavelet_service = provide(source=WaveletService)
    feature_service = provide(source=FeatureService)
    optimizer_service = provide(source=OptimizerService)
    fusion_service = provide(source=FusionService)
    metrics_service = provide(source=MetricsService)
    phantom_service = provide(source=PhantomService)
    benchmark_service = provide(source=BenchmarkService)
