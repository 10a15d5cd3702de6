from typing import Any, Self, Sequence

import numpy as np
from pydantic import field_validator, model_validator

from src.core.constants import MAX_INTENSITY, MIN_IMAGE_SIDE
from src.core.exceptions import ImageTooSmallError, ShapeMismatchError
from src.core.utils.types import FloatArray

from .base import ArrayDto, as_frozen_array


class ImageBuffer(ArrayDto):
    """Planar raster: samples have shape (channels, height, width).

    Buffers produced by loading, registration and fusion hold samples in [0, 255].
    Inverse transforms return raw planes that may leave that range until the final
    clamp; use ``is_in_range`` to tell them apart.
    """

    samples: np.ndarray

    @property
    def channels(self) -> int:
        return int(self.samples.shape[0])

    @property
    def height(self) -> int:
        return int(self.samples.shape[1])

    @property
    def width(self) -> int:
        return int(self.samples.shape[2])

    @property
    def shape(self) -> tuple[int, int, int]:
        return self.channels, self.height, self.width

    @property
    def is_grayscale(self) -> bool:
        return self.channels == 1

    @property
    def is_in_range(self) -> bool:
        return bool(np.all((self.samples >= 0.0) & (self.samples <= MAX_INTENSITY)))

    def plane(self, channel: int = 0) -> FloatArray:
        return self.samples[channel]

    def to_hwc(self) -> FloatArray:
        return np.moveaxis(self.samples, 0, -1)

    def clamped(self) -> "ImageBuffer":
        return ImageBuffer(samples=np.clip(self.samples, 0.0, MAX_INTENSITY))

    def same_geometry(self, other: "ImageBuffer") -> bool:
        return self.shape == other.shape

    @classmethod
    def from_plane(cls, plane: Any) -> Self:
        return cls(samples=np.asarray(plane, dtype=np.float64)[np.newaxis, ...])

    @classmethod
    def from_planes(cls, planes: Sequence[Any]) -> Self:
        return cls(samples=np.stack([np.asarray(p, dtype=np.float64) for p in planes]))

    @classmethod
    def from_hwc(cls, array: Any) -> Self:
        data = np.asarray(array, dtype=np.float64)
        if data.ndim == 2:
            return cls.from_plane(data)
        return cls(samples=np.moveaxis(data, -1, 0))

    @field_validator("samples", mode="before")
    @classmethod
    def validate_samples(cls, value: Any) -> FloatArray:
        return as_frozen_array(value, ndim=3)

    @model_validator(mode="after")
    def validate_geometry(self) -> Self:
        if self.channels not in (1, 3):
            raise ShapeMismatchError(f"Expected 1 or 3 channels, got '{self.channels}'")

        if self.width < MIN_IMAGE_SIDE or self.height < MIN_IMAGE_SIDE:
            raise ImageTooSmallError(
                f"Image is {self.width}x{self.height}, "
                f"both sides must be at least {MIN_IMAGE_SIDE}"
            )

        if not np.all(np.isfinite(self.samples)):
            raise ValueError("Image samples must be finite")

        return self
