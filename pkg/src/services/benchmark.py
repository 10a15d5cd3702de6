import csv
import io
import tomllib
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path
from typing import Any, Optional

import numpy as np
from loguru import logger
from pydantic import ValidationError

from src.__version__ import __version__
from src.core.config import AppConfig, GaConfig
from src.core.enums import FusionMethod, FusionRule, MetricName, ReportFormat
from src.core.exceptions import ConfigFileError, InvalidConfigError, NoDatasetsError, WavefuseError
from src.core.utils.formatters import format_csv_cell, format_metric, format_shape
from src.core.utils.json_utils import pretty_encode
from src.models.dto import (
    BenchmarkConfig,
    DatasetOutcome,
    DatasetSpec,
    ImageBuffer,
    MethodOutcome,
    SourceInfo,
)

from .base import BaseService
from .fusion import FusionService
from .image import ImageService
from .metrics import MetricsService


class BenchmarkService(BaseService):
    image_service: ImageService
    fusion_service: FusionService
    metrics_service: MetricsService

    def __init__(
        self,
        config: AppConfig,
        image_service: ImageService,
        fusion_service: FusionService,
        metrics_service: MetricsService,
    ) -> None:
        super().__init__(config)
        self.image_service = image_service
        self.fusion_service = fusion_service
        self.metrics_service = metrics_service

    def load_config(self, path: Path) -> BenchmarkConfig:
        logger.debug(f"Reading benchmark config '{path}'")
        try:
            with path.open("rb") as file:
                raw = tomllib.load(file)
        except OSError as exception:
            raise ConfigFileError(f"Cannot read config '{path}': {exception}") from exception
        except tomllib.TOMLDecodeError as exception:
            raise ConfigFileError(f"Config '{path}' is not valid TOML: {exception}") from exception

        if isinstance(raw.get("ga"), dict):
            raw["ga"] = GaConfig.build(**raw["ga"])

        try:
            config = BenchmarkConfig.model_validate(raw)
        except ValidationError as exception:
            raise ConfigFileError(f"Invalid config '{path}': {exception}") from exception

        if not config.datasets:
            raise NoDatasetsError("no datasets")

        root = path.resolve().parent
        return config.model_copy(update={"datasets": [d.resolved(root) for d in config.datasets]})

    def run(
        self,
        config: BenchmarkConfig,
        workers: int = 1,
        save_images: bool = False,
    ) -> list[DatasetOutcome]:
        if not config.datasets:
            raise NoDatasetsError("no datasets")
        if workers < 1:
            raise InvalidConfigError("workers must be at least 1")

        def task(spec: DatasetSpec) -> DatasetOutcome:
            return self.run_dataset(spec, config.methods, config.ga, save_images)

        if workers == 1:
            return [task(spec) for spec in config.datasets]

        with ThreadPoolExecutor(max_workers=workers) as executor:
            return list(executor.map(task, config.datasets))

    def run_dataset(
        self,
        spec: DatasetSpec,
        methods: list[FusionMethod],
        ga: GaConfig,
        save_images: bool = False,
    ) -> DatasetOutcome:
        logger.info(f"Dataset '{spec.name}': {len(methods)} method(s)")

        try:
            source1 = self.image_service.load_image(spec.source1)
            source2 = self.image_service.load_image(spec.source2)
            info1 = self._source_info(spec.source1, source1)
            info2 = self._source_info(spec.source2, source2)
            a, b = self.image_service.register_pair(source1, source2)

            results: list[MethodOutcome] = []
            for method in methods:
                fusion = self.fusion_service.fuse(a, b, method, ga)
                report = self.metrics_service.full_report(a, b, fusion.fused)
                results.append(
                    MethodOutcome(
                        method=method,
                        report=report,
                        weights=fusion.mean_weights,
                        channel_weights=fusion.weights,
                    )
                )

                if save_images:
                    target = self.config.dataset_dir(spec.name) / f"{method.value}.png"
                    self.image_service.save_image(fusion.fused, target)
        except (WavefuseError, OSError) as exception:
            logger.error(f"Dataset '{spec.name}' failed: {exception}")
            return DatasetOutcome(name=spec.name, error=str(exception))

        logger.info(f"Dataset '{spec.name}' done")
        return DatasetOutcome(name=spec.name, source1=info1, source2=info2, results=tuple(results))

    def build_report(
        self,
        outcomes: list[DatasetOutcome],
        methods: list[FusionMethod],
        timestamp: Optional[str] = None,
    ) -> dict[str, Any]:
        header: dict[str, Any] = {"tool": "wavefuse", "version": __version__}
        if timestamp is not None:
            header["generated_at"] = timestamp

        return {
            "header": header,
            "datasets": [self._dataset_row(o) for o in outcomes],
            "metrics": [
                {
                    "metric": metric.value,
                    "method": method.label,
                    "technique": method.title,
                    "values": {
                        o.name: format_metric(self._metric_value(o, method, metric))
                        for o in outcomes
                    },
                }
                for metric in MetricName
                for method in methods
            ],
            "weights": [
                {
                    "method": method.label,
                    "technique": method.title,
                    "values": {o.name: self._weight_cell(o, method) for o in outcomes},
                }
                for method in methods
                if method.rule == FusionRule.GA_WEIGHTED
            ],
        }

    def render(self, report: dict[str, Any], report_format: ReportFormat) -> str:
        match report_format:
            case ReportFormat.JSON:
                return pretty_encode(report)
            case ReportFormat.CSV:
                return self._render_csv(report)

    def _render_csv(self, report: dict[str, Any]) -> str:
        names = [row["name"] for row in report["datasets"]]
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(["section", "metric", "method", *names])

        for row in report["metrics"]:
            values = [row["values"][name] for name in names]
            writer.writerow(["metric", row["metric"], row["method"], *map(_csv_cell, values)])

        for row in report["weights"]:
            for key in ("wv", "wt"):
                values = [(row["values"][name] or {}).get(key) for name in names]
                writer.writerow(["weight", key, row["method"], *map(_csv_cell, values)])

        writer.writerow(["status", "", "", *(row["status"] for row in report["datasets"])])

        return buffer.getvalue()

    def _source_info(self, path: Path, image: ImageBuffer) -> SourceInfo:
        entropies = [
            self.metrics_service.entropy(channel)
            for channel in self.image_service.split_channels(image)
        ]
        return SourceInfo(
            path=path.name,
            size=format_shape(image.height, image.width, image.channels),
            entropy=float(np.mean(entropies)),
        )

    @staticmethod
    def _dataset_row(outcome: DatasetOutcome) -> dict[str, Any]:
        return {
            "name": outcome.name,
            "status": "failed" if outcome.failed else "ok",
            "error": outcome.error,
            "source1": outcome.source1.model_dump() if outcome.source1 else None,
            "source2": outcome.source2.model_dump() if outcome.source2 else None,
        }

    @staticmethod
    def _metric_value(
        outcome: DatasetOutcome, method: FusionMethod, metric: MetricName
    ) -> Optional[float]:
        result = outcome.result(method)
        return result.report.value(metric) if result else None

    @staticmethod
    def _weight_cell(outcome: DatasetOutcome, method: FusionMethod) -> Optional[dict[str, Any]]:
        result = outcome.result(method)
        if result is None or result.weights is None:
            return None

        return {
            "wv": result.weights.wv,
            "wt": result.weights.wt,
            "dominant": result.weights.dominant.value,
            "per_channel": [p.model_dump() for p in result.channel_weights or ()],
        }


def _csv_cell(value: Any) -> str:
    if value is None:
        return ""
    if isinstance(value, str):
        return value
    return format_csv_cell(float(value))
