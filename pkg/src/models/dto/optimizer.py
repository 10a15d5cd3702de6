from typing import Iterable, Optional, Self

from pydantic import model_validator

from src.core.constants import WEIGHT_SUM_TOLERANCE
from src.core.enums import DominantSource, TerminationReason

from .base import BaseDto


class WeightPair(BaseDto):
    wv: float
    wt: float

    @classmethod
    def from_wv(cls, wv: float) -> Self:
        clamped = min(max(wv, 0.0), 1.0)
        return cls(wv=clamped, wt=1.0 - clamped)

    @classmethod
    def mean(cls, pairs: Iterable["WeightPair"]) -> Self:
        items = list(pairs)
        if not items:
            raise ValueError("Cannot average an empty set of weight pairs")
        return cls.from_wv(sum(p.wv for p in items) / len(items))

    def swapped(self) -> "WeightPair":
        return WeightPair(wv=self.wt, wt=self.wv)

    @property
    def dominant(self) -> DominantSource:
        if self.wv > self.wt:
            return DominantSource.SOURCE1
        if self.wt > self.wv:
            return DominantSource.SOURCE2
        return DominantSource.BALANCED

    @model_validator(mode="after")
    def validate_pair(self) -> Self:
        if not (0.0 <= self.wv <= 1.0 and 0.0 <= self.wt <= 1.0):
            raise ValueError(f"Weights must lie in [0, 1], got ({self.wv}, {self.wt})")

        if abs(self.wv + self.wt - 1.0) > WEIGHT_SUM_TOLERANCE:
            raise ValueError(f"Weights must sum to 1, got {self.wv + self.wt!r}")

        return self


class GenerationRecord(BaseDto):
    generation: int
    base_wv: float
    diff: float
    trial_wv: tuple[float, ...]
    trial_mse: tuple[float, ...]
    best_wv: float
    best_mse: float
    gap: float


class GaTrace(BaseDto):
    generations: tuple[GenerationRecord, ...]
    termination_reason: TerminationReason
    best_wv: float
    best_mse: float
    refined: bool = False
    refined_wv: Optional[float] = None
    refined_mse: Optional[float] = None

    @property
    def generations_run(self) -> int:
        return len(self.generations)

    @property
    def weights(self) -> WeightPair:
        return WeightPair.from_wv(self.best_wv)
