from pathlib import Path
from typing import Optional

from pydantic import Field, field_validator

from src.core.config import GaConfig
from src.core.enums import FusionMethod

from .base import BaseDto
from .metrics import MetricReport
from .optimizer import WeightPair


class DatasetSpec(BaseDto):
    name: str
    source1: Path
    source2: Path

    def resolved(self, root: Path) -> "DatasetSpec":
        return self.model_copy(
            update={"source1": root / self.source1, "source2": root / self.source2}
        )


class BenchmarkConfig(BaseDto):
    datasets: list[DatasetSpec] = []
    methods: list[FusionMethod] = Field(default_factory=lambda: list(FusionMethod))
    ga: GaConfig = Field(default_factory=GaConfig)

    @field_validator("methods")
    @classmethod
    def validate_methods(cls, value: list[FusionMethod]) -> list[FusionMethod]:
        if not value:
            raise ValueError("methods must name at least one fusion method")
        if len(set(value)) != len(value):
            raise ValueError("methods must not repeat")
        return value

    @field_validator("datasets")
    @classmethod
    def validate_dataset_names(cls, value: list[DatasetSpec]) -> list[DatasetSpec]:
        names = [d.name for d in value]
        if len(set(names)) != len(names):
            raise ValueError("dataset names must be unique")
        return value


class SourceInfo(BaseDto):
    path: str
    size: str
    entropy: float


class MethodOutcome(BaseDto):
    method: FusionMethod
    report: MetricReport
    weights: Optional[WeightPair] = None
    channel_weights: Optional[tuple[WeightPair, ...]] = None


class DatasetOutcome(BaseDto):
    name: str
    source1: Optional[SourceInfo] = None
    source2: Optional[SourceInfo] = None
    results: tuple[MethodOutcome, ...] = ()
    error: Optional[str] = None

    @property
    def failed(self) -> bool:
        return self.error is not None

    def result(self, method: FusionMethod) -> Optional[MethodOutcome]:
        return next((r for r in self.results if r.method == method), None)
