import math
from typing import Final

import numpy as np
import pywt
from loguru import logger

from src.core.constants import DECOMPOSITION_LEVELS, DWT_MODE, WAVELET_NAME
from src.core.enums import TransformKind
from src.core.exceptions import NotGrayscaleError, WrongTransformKindError
from src.core.utils.types import FloatArray
from src.models.dto import BAND_ORDER, Decomposition, ImageBuffer, Subband

from .base import BaseService

INV_SQRT2: Final[float] = 1.0 / math.sqrt(2.0)

_ROWS: Final[int] = 0
_COLS: Final[int] = 1


class WaveletService(BaseService):
    def dwt_forward(self, image: ImageBuffer) -> Decomposition:
        plane = self._single_plane(image)
        cA2, (cH2, cV2, cD2), (cH1, cV1, cD1) = pywt.wavedec2(
            plane,
            WAVELET_NAME,
            mode=DWT_MODE,
            level=DECOMPOSITION_LEVELS,
        )
        # pywt's cH is high-pass along y (LH), cV high-pass along x (HL)
        coeffs = [cA2, cH2, cV2, cD2, cH1, cV1, cD1]
        return self._assemble(TransformKind.DECIMATED, image, coeffs)

    def dwt_inverse(self, decomposition: Decomposition) -> ImageBuffer:
        self._require(decomposition, TransformKind.DECIMATED)
        ll2, lh2, hl2, hh2, lh1, hl1, hh1 = (b.coeffs for b in decomposition.bands)

        plane = pywt.waverec2(
            [ll2, (lh2, hl2, hh2), (lh1, hl1, hh1)],
            WAVELET_NAME,
            mode=DWT_MODE,
        )
        plane = plane[: decomposition.source_height, : decomposition.source_width]
        return ImageBuffer.from_plane(plane)

    def udwt_forward(self, image: ImageBuffer) -> Decomposition:
        approximation = self._single_plane(image)
        details: dict[int, tuple[FloatArray, FloatArray, FloatArray]] = {}

        for level in range(1, DECOMPOSITION_LEVELS + 1):
            step = 2 ** (level - 1)
            approximation, lh, hl, hh = self._atrous_analysis(approximation, step)
            details[level] = (lh, hl, hh)

        coeffs = [approximation, *details[2], *details[1]]
        return self._assemble(TransformKind.UNDECIMATED, image, coeffs)

    def udwt_inverse(self, decomposition: Decomposition) -> ImageBuffer:
        self._require(decomposition, TransformKind.UNDECIMATED)
        ll2, lh2, hl2, hh2, lh1, hl1, hh1 = (b.coeffs for b in decomposition.bands)

        ll1 = self._atrous_synthesis(ll2, lh2, hl2, hh2, step=2)
        plane = self._atrous_synthesis(ll1, lh1, hl1, hh1, step=1)
        return ImageBuffer.from_plane(plane)

    def forward(self, image: ImageBuffer, transform: TransformKind) -> Decomposition:
        match transform:
            case TransformKind.DECIMATED:
                return self.dwt_forward(image)
            case TransformKind.UNDECIMATED:
                return self.udwt_forward(image)

    def inverse(self, decomposition: Decomposition) -> ImageBuffer:
        match decomposition.transform:
            case TransformKind.DECIMATED:
                return self.dwt_inverse(decomposition)
            case TransformKind.UNDECIMATED:
                return self.udwt_inverse(decomposition)

    def _atrous_analysis(
        self, plane: FloatArray, step: int
    ) -> tuple[FloatArray, FloatArray, FloatArray, FloatArray]:
        low_x, high_x = self._split(plane, _COLS, step)
        ll, lh = self._split(low_x, _ROWS, step)
        hl, hh = self._split(high_x, _ROWS, step)
        return ll, lh, hl, hh

    def _atrous_synthesis(
        self,
        ll: FloatArray,
        lh: FloatArray,
        hl: FloatArray,
        hh: FloatArray,
        step: int,
    ) -> FloatArray:
        low_x = self._merge(ll, lh, _ROWS, step)
        high_x = self._merge(hl, hh, _ROWS, step)
        return self._merge(low_x, high_x, _COLS, step)

    @staticmethod
    def _split(data: FloatArray, axis: int, step: int) -> tuple[FloatArray, FloatArray]:
        # Haar taps dilated by `step`, periodic extension
        shifted = np.roll(data, -step, axis=axis)
        return (data + shifted) * INV_SQRT2, (data - shifted) * INV_SQRT2

    @staticmethod
    def _merge(low: FloatArray, high: FloatArray, axis: int, step: int) -> FloatArray:
        # average of the two redundant reconstructions of every sample
        direct = low + high
        delayed = np.roll(low - high, step, axis=axis)
        return (direct + delayed) * (0.5 * INV_SQRT2)

    @staticmethod
    def _single_plane(image: ImageBuffer) -> FloatArray:
        if not image.is_grayscale:
            raise NotGrayscaleError(
                f"Wavelet transforms take single-channel buffers, got {image.channels} channels"
            )
        return image.plane()

    @staticmethod
    def _require(decomposition: Decomposition, transform: TransformKind) -> None:
        if decomposition.transform != transform:
            raise WrongTransformKindError(
                f"Expected a {transform} decomposition, got {decomposition.transform}"
            )

    @staticmethod
    def _assemble(
        transform: TransformKind, image: ImageBuffer, coeffs: list[FloatArray]
    ) -> Decomposition:
        bands = tuple(
            Subband(kind=kind, level=level, coeffs=c)
            for (kind, level), c in zip(BAND_ORDER, coeffs)
        )
        logger.debug(f"{transform} decomposition of {image.width}x{image.height} plane")
        return Decomposition(
            transform=transform,
            source_width=image.width,
            source_height=image.height,
            bands=bands,
        )
