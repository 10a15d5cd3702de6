from pathlib import Path
from typing import Iterator

import numpy as np
import pytest
from dishka import Container

from src.core.config import AppConfig
from src.infrastructure.di import create_container
from src.models.dto import ImageBuffer
from src.services.benchmark import BenchmarkService
from src.services.features import FeatureService
from src.services.fusion import FusionService
from src.services.image import ImageService
from src.services.metrics import MetricsService
from src.services.optimizer import OptimizerService
from src.services.phantom import PhantomService
from src.services.wavelet import WaveletService


@pytest.fixture
def app_config(tmp_path: Path) -> AppConfig:
    return AppConfig(report_dir=tmp_path / "reports")


@pytest.fixture
def container(app_config: AppConfig) -> Iterator[Container]:
    container = create_container(app_config)
    yield container
    container.close()


@pytest.fixture
def image_service(container: Container) -> ImageService:
    return container.get(ImageService)


@pytest.fixture
def wavelet_service(container: Container) -> WaveletService:
    return container.get(WaveletService)


@pytest.fixture
def feature_service(container: Container) -> FeatureService:
    return container.get(FeatureService)


@pytest.fixture
def optimizer_service(container: Container) -> OptimizerService:
    return container.get(OptimizerService)


@pytest.fixture
def fusion_service(container: Container) -> FusionService:
    return container.get(FusionService)


@pytest.fixture
def metrics_service(container: Container) -> MetricsService:
    return container.get(MetricsService)


@pytest.fixture
def phantom_service(container: Container) -> PhantomService:
    return container.get(PhantomService)


@pytest.fixture
def benchmark_service(container: Container) -> BenchmarkService:
    return container.get(BenchmarkService)


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(20240601)


@pytest.fixture
def textured(phantom_service: PhantomService) -> ImageBuffer:
    return phantom_service.make_textured(size=64, seed=0)


@pytest.fixture
def other_textured(phantom_service: PhantomService) -> ImageBuffer:
    return phantom_service.make_textured(size=64, seed=1)


def constant_image(value: float, height: int = 16, width: int = 16) -> ImageBuffer:
    return ImageBuffer.from_plane(np.full((height, width), value))
