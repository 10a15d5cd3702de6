import math
from typing import Optional

import numpy as np
from loguru import logger

from src.core.constants import GRAY_LEVELS, MAX_INTENSITY
from src.core.exceptions import (
    DegenerateInputError,
    ImageTooSmallError,
    NotGrayscaleError,
    ShapeMismatchError,
)
from src.core.utils.formatters import quantize
from src.core.utils.types import FloatArray
from src.models.dto import ImageBuffer, MetricReport

from .base import BaseService


class MetricsService(BaseService):
    """Fusion quality metrics over the 8-bit quantized form of each image.

    ``v`` and ``t`` are the two sources, ``f`` the fused image.
    """

    def entropy(self, image: ImageBuffer) -> float:
        counts = self._histogram(self._levels(image))
        return self._entropy_bits(counts)

    def mutual_information(self, v: ImageBuffer, t: ImageBuffer, f: ImageBuffer) -> float:
        self._check_shapes(v, t, f)
        fused = self._levels(f)
        return self._information(fused, self._levels(v)) + self._information(
            fused, self._levels(t)
        )

    def rmse(self, v: ImageBuffer, t: ImageBuffer, f: ImageBuffer) -> float:
        self._check_shapes(v, t, f)
        error_v, error_t = self._squared_errors(v, t, f)
        return 0.5 * (math.sqrt(error_v) + math.sqrt(error_t))

    def psnr(self, v: ImageBuffer, t: ImageBuffer, f: ImageBuffer) -> float:
        self._check_shapes(v, t, f)
        error_v, error_t = self._squared_errors(v, t, f)
        mse = 0.5 * (error_v + error_t)

        if mse == 0.0:
            return math.inf

        return 10.0 * math.log10(MAX_INTENSITY**2 / mse)

    def quality_index(self, v: ImageBuffer, t: ImageBuffer, f: ImageBuffer) -> float:
        self._check_shapes(v, t, f)
        fused = self._plane(f)
        q_v = self.universal_index(self._plane(v), fused)
        q_t = self.universal_index(self._plane(t), fused)
        return 0.5 * (q_v + q_t)

    def universal_index(self, x: FloatArray, y: FloatArray) -> float:
        """Global Wang-Bovik index: correlation × luminance × contrast."""
        count = x.size
        if count < 2:
            raise DegenerateInputError("Quality index needs at least 2 samples")

        mean_x, mean_y = float(np.mean(x)), float(np.mean(y))
        var_x = float(np.var(x, ddof=1))
        var_y = float(np.var(y, ddof=1))
        covariance = float(np.sum((x - mean_x) * (y - mean_y))) / (count - 1)

        if var_x == 0.0 or var_y == 0.0:
            raise DegenerateInputError("Quality index is undefined for a constant image")
        # quantized planes never reach this; direct callers may pass signed arrays
        if mean_x == 0.0 and mean_y == 0.0:
            raise DegenerateInputError("Quality index is undefined for two zero-mean images")

        sigma_x, sigma_y = math.sqrt(var_x), math.sqrt(var_y)
        correlation = covariance / (sigma_x * sigma_y)
        luminance = 2.0 * mean_x * mean_y / (mean_x**2 + mean_y**2)
        contrast = 2.0 * sigma_x * sigma_y / (var_x + var_y)
        return correlation * luminance * contrast

    def spatial_frequency(self, image: ImageBuffer) -> float:
        row_frequency, column_frequency = self.row_column_frequency(image)
        return math.sqrt(row_frequency**2 + column_frequency**2)

    def row_column_frequency(self, image: ImageBuffer) -> tuple[float, float]:
        plane = self._plane(image)
        rows, columns = plane.shape
        if rows < 2 or columns < 2:
            raise ImageTooSmallError("Spatial frequency needs at least 2 rows and 2 columns")

        # both sums are normalised by M·N, including the M·(N-1) and (M-1)·N term counts
        pixels = rows * columns
        row_frequency = math.sqrt(float(np.sum(np.diff(plane, axis=1) ** 2)) / pixels)
        column_frequency = math.sqrt(float(np.sum(np.diff(plane, axis=0) ** 2)) / pixels)
        return row_frequency, column_frequency

    def full_report(self, v: ImageBuffer, t: ImageBuffer, f: ImageBuffer) -> MetricReport:
        self._check_shapes(v, t, f)
        reports = [
            self._channel_report(*(self._channel(img, c) for img in (v, t, f)))
            for c in range(f.channels)
        ]

        if len(reports) == 1:
            return reports[0]

        qi_values = [r.qi for r in reports if r.qi is not None]
        return MetricReport(
            ie=float(np.mean([r.ie for r in reports])),
            mi=float(np.mean([r.mi for r in reports])),
            rmse=float(np.mean([r.rmse for r in reports])),
            psnr=float(np.mean([r.psnr for r in reports])),
            qi=float(np.mean(qi_values)) if qi_values else None,
            sf=float(np.mean([r.sf for r in reports])),
        )

    def _channel_report(self, v: ImageBuffer, t: ImageBuffer, f: ImageBuffer) -> MetricReport:
        qi: Optional[float]
        try:
            qi = self.quality_index(v, t, f)
        except DegenerateInputError as exception:
            logger.warning(f"Quality index skipped: {exception}")
            qi = None

        return MetricReport(
            ie=self.entropy(f),
            mi=self.mutual_information(v, t, f),
            rmse=self.rmse(v, t, f),
            psnr=self.psnr(v, t, f),
            qi=qi,
            sf=self.spatial_frequency(f),
        )

    def _squared_errors(
        self, v: ImageBuffer, t: ImageBuffer, f: ImageBuffer
    ) -> tuple[float, float]:
        fused = self._plane(f)
        error_v = float(np.mean((fused - self._plane(v)) ** 2))
        error_t = float(np.mean((fused - self._plane(t)) ** 2))
        return error_v, error_t

    def _information(self, x: FloatArray, y: FloatArray) -> float:
        joint = np.bincount(
            (x * GRAY_LEVELS + y).ravel(), minlength=GRAY_LEVELS * GRAY_LEVELS
        ).reshape(GRAY_LEVELS, GRAY_LEVELS)
        p_xy = joint / joint.sum()
        p_x = p_xy.sum(axis=1)
        p_y = p_xy.sum(axis=0)

        nonzero = p_xy > 0
        expected = np.outer(p_x, p_y)[nonzero]
        information = float(np.sum(p_xy[nonzero] * np.log2(p_xy[nonzero] / expected)))
        return max(information, 0.0)

    @staticmethod
    def _entropy_bits(counts: np.ndarray) -> float:
        probabilities = counts[counts > 0] / counts.sum()
        return float(-np.sum(probabilities * np.log2(probabilities))) + 0.0

    @staticmethod
    def _histogram(levels: np.ndarray) -> np.ndarray:
        return np.bincount(levels.ravel(), minlength=GRAY_LEVELS)

    def _levels(self, image: ImageBuffer) -> np.ndarray:
        return self._plane(image).astype(np.int64)

    @staticmethod
    def _plane(image: ImageBuffer) -> FloatArray:
        if not image.is_grayscale:
            raise NotGrayscaleError(
                f"Metric needs a single-channel image, got {image.channels} channels"
            )
        return quantize(image.plane())

    @staticmethod
    def _channel(image: ImageBuffer, channel: int) -> ImageBuffer:
        return ImageBuffer.from_plane(image.plane(channel))

    @staticmethod
    def _check_shapes(*images: ImageBuffer) -> None:
        shapes = {image.shape for image in images}
        if len(shapes) != 1:
            raise ShapeMismatchError(f"Metric inputs differ in shape: {sorted(shapes)}")
