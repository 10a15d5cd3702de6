from .base import ArrayDto, BaseDto
from .benchmark import BenchmarkConfig, DatasetOutcome, DatasetSpec, MethodOutcome, SourceInfo
from .features import FeatureVector
from .fusion import FusionResult
from .image import ImageBuffer
from .metrics import MetricReport
from .optimizer import GaTrace, GenerationRecord, WeightPair
from .wavelet import BAND_ORDER, FEATURE_BAND_ORDER, Decomposition, Subband

__all__ = [
    "ArrayDto",
    "BAND_ORDER",
    "BaseDto",
    "BenchmarkConfig",
    "DatasetOutcome",
    "DatasetSpec",
    "Decomposition",
    "FEATURE_BAND_ORDER",
    "FeatureVector",
    "FusionResult",
    "GaTrace",
    "GenerationRecord",
    "ImageBuffer",
    "MethodOutcome",
    "MetricReport",
    "SourceInfo",
    "Subband",
    "WeightPair",
]
