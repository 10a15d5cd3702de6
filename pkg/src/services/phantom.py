from pathlib import Path
from typing import Final

import numpy as np
from loguru import logger

from src.core.config import AppConfig
from src.core.constants import MAX_INTENSITY
from src.core.enums import FusionMethod
from src.core.utils.types import FloatArray
from src.models.dto import DatasetSpec, ImageBuffer

from .base import BaseService
from .image import ImageService

BENCHMARK_FILENAME: Final[str] = "benchmark.toml"


class PhantomService(BaseService):
    """Deterministic synthetic source pairs standing in for real multimodal scans.

    Source 1 mimics an anatomical scan: tissue everywhere, narrow intensity range.
    Source 2 mimics a functional scan: dark background with a few bright uptake blobs.
    """

    image_service: ImageService

    def __init__(self, config: AppConfig, image_service: ImageService) -> None:
        super().__init__(config)
        self.image_service = image_service

    def make_pair(
        self,
        size: int = 256,
        seed: int = 0,
        rgb: bool = False,
    ) -> tuple[ImageBuffer, ImageBuffer]:
        rng = np.random.default_rng(seed)
        y, x = self._grid(size)

        anatomical = self._anatomical(x, y, rng)
        functional = self._functional(x, y, rng)

        if not rgb:
            return ImageBuffer.from_plane(anatomical), ImageBuffer.from_plane(functional)

        colour = [functional, 0.7 * functional, 0.4 * functional + 10.0]
        return (
            ImageBuffer.from_planes([anatomical] * 3),
            ImageBuffer.from_planes([np.clip(c, 0.0, MAX_INTENSITY) for c in colour]),
        )

    def make_textured(self, size: int = 64, seed: int = 0) -> ImageBuffer:
        rng = np.random.default_rng(seed)
        y, x = self._grid(size)
        pattern = (
            128.0
            + 50.0 * np.sin(7.0 * np.pi * x + rng.uniform(0, np.pi))
            + 30.0 * np.cos(11.0 * np.pi * y + rng.uniform(0, np.pi))
            + rng.uniform(-20.0, 20.0, size=(size, size))
        )
        return ImageBuffer.from_plane(np.clip(pattern, 0.0, MAX_INTENSITY))

    def write_pairs(
        self,
        out_dir: Path,
        count: int = 4,
        size: int = 256,
        rgb: bool = False,
        seed: int = 0,
    ) -> list[DatasetSpec]:
        out_dir.mkdir(parents=True, exist_ok=True)
        datasets: list[DatasetSpec] = []

        for index in range(1, count + 1):
            source1, source2 = self.make_pair(size=size, seed=seed + index, rgb=rgb)
            spec = DatasetSpec(
                name=f"set{index}",
                source1=Path(f"pair{index:02d}_src1.png"),
                source2=Path(f"pair{index:02d}_src2.png"),
            )
            self.image_service.save_image(source1, out_dir / spec.source1)
            self.image_service.save_image(source2, out_dir / spec.source2)
            datasets.append(spec)

        config_path = out_dir / BENCHMARK_FILENAME
        config_path.write_text(self.render_config(datasets), encoding="utf-8")
        logger.info(f"Wrote {count} synthetic pair(s) and '{config_path}'")
        return datasets

    @staticmethod
    def render_config(datasets: list[DatasetSpec]) -> str:
        methods = ", ".join(f'"{m.value}"' for m in FusionMethod)
        lines = [f"methods = [{methods}]", ""]
        for spec in datasets:
            lines += [
                "[[datasets]]",
                f'name = "{spec.name}"',
                f'source1 = "{spec.source1.as_posix()}"',
                f'source2 = "{spec.source2.as_posix()}"',
                "",
            ]
        return "\n".join(lines)

    @staticmethod
    def _grid(size: int) -> tuple[FloatArray, FloatArray]:
        axis = np.linspace(-1.0, 1.0, size)
        y, x = np.meshgrid(axis, axis, indexing="ij")
        return y, x

    @staticmethod
    def _anatomical(x: FloatArray, y: FloatArray, rng: np.random.Generator) -> FloatArray:
        head = (x / 0.85) ** 2 + (y / 0.95) ** 2 < 1.0
        ventricles = (x / 0.25) ** 2 + (y / 0.35) ** 2 < 1.0
        folds = np.sin(9.0 * np.pi * x + rng.uniform(0, np.pi)) * np.cos(
            7.0 * np.pi * y + rng.uniform(0, np.pi)
        )

        plane = 112.0 + 10.0 * head - 8.0 * ventricles + 6.0 * folds
        plane += rng.normal(0.0, 1.5, size=x.shape)
        return np.clip(plane, 0.0, MAX_INTENSITY)

    @staticmethod
    def _functional(x: FloatArray, y: FloatArray, rng: np.random.Generator) -> FloatArray:
        plane = np.full(x.shape, 8.0)
        for _ in range(int(rng.integers(3, 6))):
            cx, cy = rng.uniform(-0.55, 0.55, size=2)
            sigma = rng.uniform(0.08, 0.2)
            amplitude = rng.uniform(150.0, 240.0)
            plane += amplitude * np.exp(-((x - cx) ** 2 + (y - cy) ** 2) / (2.0 * sigma**2))

        return np.clip(plane, 0.0, MAX_INTENSITY)
