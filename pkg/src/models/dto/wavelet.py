import math
from typing import Any, Final, Self, Sequence

import numpy as np
from pydantic import field_validator, model_validator

from src.core.constants import DECOMPOSITION_LEVELS
from src.core.enums import BandKind, TransformKind
from src.core.exceptions import ShapeMismatchError, TransformMismatchError

from .base import ArrayDto, as_frozen_array

BAND_ORDER: Final[tuple[tuple[BandKind, int], ...]] = (
    (BandKind.LL, 2),
    (BandKind.LH, 2),
    (BandKind.HL, 2),
    (BandKind.HH, 2),
    (BandKind.LH, 1),
    (BandKind.HL, 1),
    (BandKind.HH, 1),
)
FEATURE_BAND_ORDER: Final[tuple[tuple[BandKind, int], ...]] = BAND_ORDER[:4]


class Subband(ArrayDto):
    kind: BandKind
    level: int
    coeffs: np.ndarray

    @property
    def name(self) -> str:
        return f"{self.kind}{self.level}"

    @property
    def shape(self) -> tuple[int, int]:
        return int(self.coeffs.shape[0]), int(self.coeffs.shape[1])

    def with_coeffs(self, coeffs: Any) -> "Subband":
        return Subband(kind=self.kind, level=self.level, coeffs=coeffs)

    @field_validator("coeffs", mode="before")
    @classmethod
    def validate_coeffs(cls, value: Any) -> np.ndarray:
        return as_frozen_array(value, ndim=2)

    @field_validator("level")
    @classmethod
    def validate_level(cls, value: int) -> int:
        if not 1 <= value <= DECOMPOSITION_LEVELS:
            raise ValueError(f"level must be between 1 and {DECOMPOSITION_LEVELS}")
        return value


class Decomposition(ArrayDto):
    """Two-level Haar decomposition holding LL2, LH2, HL2, HH2, LH1, HL1, HH1 in order."""

    transform: TransformKind
    source_width: int
    source_height: int
    bands: tuple[Subband, ...]
    levels: int = DECOMPOSITION_LEVELS

    def band(self, kind: BandKind, level: int) -> Subband:
        return self.bands[BAND_ORDER.index((kind, level))]

    @property
    def approximation(self) -> Subband:
        return self.bands[0]

    @property
    def details(self) -> tuple[Subband, ...]:
        return self.bands[1:]

    @property
    def feature_bands(self) -> tuple[Subband, ...]:
        return tuple(self.band(kind, level) for kind, level in FEATURE_BAND_ORDER)

    def expected_shape(self, level: int) -> tuple[int, int]:
        if self.transform == TransformKind.UNDECIMATED:
            return self.source_height, self.source_width

        factor = 2**level
        return math.ceil(self.source_height / factor), math.ceil(self.source_width / factor)

    def with_coeffs(self, coeffs: Sequence[Any]) -> "Decomposition":
        if len(coeffs) != len(self.bands):
            raise ShapeMismatchError(f"Expected {len(self.bands)} bands, got {len(coeffs)}")

        return Decomposition(
            transform=self.transform,
            source_width=self.source_width,
            source_height=self.source_height,
            bands=tuple(band.with_coeffs(c) for band, c in zip(self.bands, coeffs)),
        )

    def check_compatible(self, other: "Decomposition") -> None:
        if self.transform != other.transform:
            raise TransformMismatchError(
                f"Cannot combine '{self.transform}' and '{other.transform}' decompositions"
            )

        if (self.source_height, self.source_width) != (other.source_height, other.source_width):
            raise ShapeMismatchError(
                f"Decompositions of {self.source_width}x{self.source_height} and "
                f"{other.source_width}x{other.source_height} images cannot be combined"
            )

    @model_validator(mode="after")
    def validate_bands(self) -> Self:
        layout = tuple((band.kind, band.level) for band in self.bands)
        if layout != BAND_ORDER:
            raise ValueError(f"Bands must be ordered as {BAND_ORDER}, got {layout}")

        for band in self.bands:
            expected = self.expected_shape(band.level)
            if band.shape != expected:
                raise ShapeMismatchError(
                    f"Band {band.name} has shape {band.shape}, "
                    f"a {self.transform} decomposition needs {expected}"
                )

        return self
