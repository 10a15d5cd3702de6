from pathlib import Path

import numpy as np
from loguru import logger
from PIL import Image, UnidentifiedImageError
from skimage.transform import resize

from src.core.constants import MAX_INTENSITY, MIN_IMAGE_SIDE, SUPPORTED_SUFFIXES
from src.core.exceptions import (
    ImageNotFoundError,
    ImageTooSmallError,
    ImageWriteError,
    UnsupportedFormatError,
)
from src.core.utils.formatters import quantize
from src.core.utils.types import AnyPath, FloatArray
from src.models.dto import ImageBuffer

from .base import BaseService

_READ_FORMATS = frozenset({"PNG", "PPM"})
_ALPHA_MODES = frozenset({"RGBA", "LA", "PA", "La", "RGBa"})


class ImageService(BaseService):
    def load_image(self, path: AnyPath) -> ImageBuffer:
        path = Path(path)
        logger.debug(f"Loading image '{path}'")

        if not path.is_file():
            raise ImageNotFoundError(f"Image '{path}' does not exist")

        try:
            with Image.open(path) as raster:
                raster.load()
                data = self._to_array(raster, path)
        except UnidentifiedImageError as exception:
            raise UnsupportedFormatError(f"'{path}' is not a readable raster") from exception

        height, width = data.shape[:2]
        if height < MIN_IMAGE_SIDE or width < MIN_IMAGE_SIDE:
            raise ImageTooSmallError(
                f"Image '{path}' is {width}x{height}, both sides must be at least "
                f"{MIN_IMAGE_SIDE}"
            )

        image = ImageBuffer.from_hwc(data)
        logger.info(f"Loaded '{path.name}' ({image.width}x{image.height}x{image.channels})")
        return image

    def save_image(self, image: ImageBuffer, path: AnyPath) -> None:
        path = Path(path)
        suffix = path.suffix.lower()

        if suffix not in SUPPORTED_SUFFIXES:
            raise UnsupportedFormatError(f"Cannot write '{suffix or path.name}' rasters")

        if suffix == ".pgm" and not image.is_grayscale:
            raise UnsupportedFormatError("PGM output requires a single-channel image")

        data = quantize(image.to_hwc()).astype(np.uint8)
        raster = Image.fromarray(data[..., 0] if image.is_grayscale else data)

        try:
            path.parent.mkdir(parents=True, exist_ok=True)
            raster.save(path)
        except OSError as exception:
            raise ImageWriteError(f"Failed to write '{path}': {exception}") from exception

        logger.debug(f"Saved image '{path}'")

    def register_pair(self, a: ImageBuffer, b: ImageBuffer) -> tuple[ImageBuffer, ImageBuffer]:
        channels = max(a.channels, b.channels)
        a = self._expand_channels(a, channels)
        b = self._expand_channels(b, channels)

        if a.same_geometry(b):
            return a, b

        logger.info(f"Resampling {b.width}x{b.height} source to {a.width}x{a.height}")
        planes = [self._resize_plane(b.plane(c), a.height, a.width) for c in range(channels)]
        return a, ImageBuffer.from_planes(planes)

    def split_channels(self, image: ImageBuffer) -> list[ImageBuffer]:
        if image.is_grayscale:
            return [image]
        return [ImageBuffer.from_plane(image.plane(c)) for c in range(image.channels)]

    def merge_channels(self, planes: list[ImageBuffer]) -> ImageBuffer:
        if len(planes) == 1:
            return planes[0]
        return ImageBuffer.from_planes([p.plane() for p in planes])

    def _to_array(self, raster: Image.Image, path: Path) -> FloatArray:
        if raster.format not in _READ_FORMATS:
            raise UnsupportedFormatError(f"'{path}' is {raster.format}, expected PNG or PGM")

        if raster.mode in _ALPHA_MODES or "transparency" in raster.info:
            raise UnsupportedFormatError(f"'{path}' has an alpha channel")

        match raster.mode:
            case "L" | "RGB":
                pass
            case "1":
                raster = raster.convert("L")
            case "P":
                rgb = np.asarray(raster.convert("RGB"), dtype=np.float64)
                if np.all(rgb == rgb[..., :1]):
                    return rgb[..., 0]
                return rgb
            case _:
                raise UnsupportedFormatError(
                    f"'{path}' uses mode '{raster.mode}', only 8-bit gray or RGB are supported"
                )

        return np.asarray(raster, dtype=np.float64)

    def _expand_channels(self, image: ImageBuffer, channels: int) -> ImageBuffer:
        if image.channels == channels:
            return image
        return ImageBuffer(samples=np.repeat(image.samples, channels, axis=0))

    def _resize_plane(self, plane: FloatArray, height: int, width: int) -> FloatArray:
        resampled = resize(
            plane,
            (height, width),
            order=1,
            mode="edge",
            anti_aliasing=False,
            preserve_range=True,
        )
        return np.clip(resampled, 0.0, MAX_INTENSITY)
