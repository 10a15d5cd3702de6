import numpy as np
from loguru import logger
from skimage.measure import moments_central, moments_hu, moments_normalized

from src.core.exceptions import EmptyBandError
from src.core.utils.types import FloatArray
from src.models.dto import Decomposition, FeatureVector, Subband

from .base import BaseService

_HU_COUNT = 7


class FeatureService(BaseService):
    def band_statistics(self, band: Subband) -> list[float]:
        coeffs = band.coeffs
        if coeffs.size == 0:
            raise EmptyBandError(f"Band {band.name} has no coefficients")

        median = float(np.median(coeffs))
        variance = float(np.var(coeffs))
        stddev = float(np.sqrt(variance))
        hu = self.hu_moments(coeffs)

        return [median, stddev, variance, *hu]

    def hu_moments(self, coeffs: FloatArray) -> list[float]:
        # detail bands are signed; shift so the band reads as a non-negative density
        density = coeffs - coeffs.min()
        if not np.any(density > 0.0):
            return [0.0] * _HU_COUNT

        mu = moments_central(density, order=3)
        nu = moments_normalized(mu, order=3)
        hu = moments_hu(nu)
        return [float(v) for v in np.nan_to_num(hu, nan=0.0, posinf=0.0, neginf=0.0)]

    def extract_features(self, decomposition: Decomposition) -> FeatureVector:
        values: list[float] = []
        for band in decomposition.feature_bands:
            values.extend(self.band_statistics(band))

        logger.debug(
            f"Extracted {len(values)} features from {decomposition.transform} decomposition"
        )
        return FeatureVector(values=tuple(values))
