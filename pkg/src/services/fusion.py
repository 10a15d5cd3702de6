from concurrent.futures import ThreadPoolExecutor
from typing import NamedTuple, Optional

import numpy as np
from loguru import logger

from src.core.config import AppConfig, GaConfig
from src.core.enums import FusionMethod, FusionRule
from src.core.exceptions import ShapeMismatchError
from src.models.dto import Decomposition, FusionResult, GaTrace, ImageBuffer, WeightPair

from .base import BaseService
from .features import FeatureService
from .image import ImageService
from .optimizer import OptimizerService
from .wavelet import WaveletService


class ChannelFusion(NamedTuple):
    plane: ImageBuffer
    weights: Optional[WeightPair]
    trace: Optional[GaTrace]


class FusionService(BaseService):
    image_service: ImageService
    wavelet_service: WaveletService
    feature_service: FeatureService
    optimizer_service: OptimizerService

    def __init__(
        self,
        config: AppConfig,
        image_service: ImageService,
        wavelet_service: WaveletService,
        feature_service: FeatureService,
        optimizer_service: OptimizerService,
    ) -> None:
        super().__init__(config)
        self.image_service = image_service
        self.wavelet_service = wavelet_service
        self.feature_service = feature_service
        self.optimizer_service = optimizer_service

    def fuse_bands_max(self, da: Decomposition, db: Decomposition) -> Decomposition:
        da.check_compatible(db)

        approximation = (da.approximation.coeffs + db.approximation.coeffs) / 2.0
        details = [
            np.where(np.abs(a.coeffs) >= np.abs(b.coeffs), a.coeffs, b.coeffs)
            for a, b in zip(da.details, db.details)
        ]
        return da.with_coeffs([approximation, *details])

    def fuse_bands_weighted(
        self,
        da: Decomposition,
        db: Decomposition,
        weights: WeightPair,
    ) -> Decomposition:
        da.check_compatible(db)
        return da.with_coeffs(
            [weights.wv * a.coeffs + weights.wt * b.coeffs for a, b in zip(da.bands, db.bands)]
        )

    def fuse(
        self,
        a: ImageBuffer,
        b: ImageBuffer,
        method: FusionMethod,
        ga: Optional[GaConfig] = None,
        workers: int = 1,
    ) -> FusionResult:
        if not a.same_geometry(b):
            raise ShapeMismatchError(
                f"Sources must be registered first: {a.shape} vs {b.shape} (channels, h, w)"
            )

        planes_a = self.image_service.split_channels(a)
        planes_b = self.image_service.split_channels(b)
        logger.debug(f"Fusing {a.channels} channel(s) with {method.title}")

        if workers > 1 and len(planes_a) > 1:
            with ThreadPoolExecutor(max_workers=workers) as executor:
                channels = list(
                    executor.map(
                        lambda pair: self._fuse_channel(pair[0], pair[1], method, ga),
                        zip(planes_a, planes_b),
                    )
                )
        else:
            channels = [
                self._fuse_channel(pa, pb, method, ga) for pa, pb in zip(planes_a, planes_b)
            ]

        fused = self.image_service.merge_channels([c.plane for c in channels]).clamped()

        if method.rule == FusionRule.MAX_RULE:
            return FusionResult(method=method, fused=fused)

        weights = tuple(c.weights for c in channels if c.weights is not None)
        traces = tuple(c.trace for c in channels if c.trace is not None)
        result = FusionResult(method=method, fused=fused, weights=weights, traces=traces)

        mean = result.mean_weights
        if mean is not None:
            logger.info(f"{method.title} weights wv={mean.wv:.4f}, wt={mean.wt:.4f}")
        return result

    def _fuse_channel(
        self,
        a: ImageBuffer,
        b: ImageBuffer,
        method: FusionMethod,
        ga: Optional[GaConfig],
    ) -> ChannelFusion:
        da = self.wavelet_service.forward(a, method.transform)
        db = self.wavelet_service.forward(b, method.transform)

        match method.rule:
            case FusionRule.MAX_RULE:
                fused = self.fuse_bands_max(da, db)
                return ChannelFusion(self.wavelet_service.inverse(fused), None, None)
            case FusionRule.GA_WEIGHTED:
                fa = self.feature_service.extract_features(da)
                fb = self.feature_service.extract_features(db)
                weights, trace = self.optimizer_service.optimize_weights(fa, fb, ga)
                fused = self.fuse_bands_weighted(da, db, weights)
                return ChannelFusion(self.wavelet_service.inverse(fused), weights, trace)
