from typing import Any, Self

import numpy as np
from pydantic import field_validator

from src.core.constants import BAND_STATISTICS, FEATURE_LENGTH
from src.core.utils.types import FloatArray

from .base import BaseDto


class FeatureVector(BaseDto):
    """Ten statistics (median, stddev, variance, hu1..hu7) for LL2, LH2, HL2, HH2."""

    values: tuple[float, ...]

    def as_array(self) -> FloatArray:
        return np.asarray(self.values, dtype=np.float64)

    def block(self, index: int) -> tuple[float, ...]:
        start = index * BAND_STATISTICS
        return self.values[start : start + BAND_STATISTICS]

    def __len__(self) -> int:
        return len(self.values)

    @classmethod
    def from_array(cls, values: Any) -> Self:
        return cls(values=tuple(float(v) for v in np.ravel(values)))

    @field_validator("values")
    @classmethod
    def validate_values(cls, value: tuple[float, ...]) -> tuple[float, ...]:
        if len(value) != FEATURE_LENGTH:
            raise ValueError(f"Feature vector must hold {FEATURE_LENGTH} values, got {len(value)}")

        if not all(np.isfinite(value)):
            raise ValueError("Feature vector values must be finite")

        return value
