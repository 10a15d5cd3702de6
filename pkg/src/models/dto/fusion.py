from typing import Optional, Self

from pydantic import model_validator

from src.core.enums import FusionMethod, FusionRule

from .base import ArrayDto
from .image import ImageBuffer
from .optimizer import GaTrace, WeightPair


class FusionResult(ArrayDto):
    method: FusionMethod
    fused: ImageBuffer
    weights: Optional[tuple[WeightPair, ...]] = None
    traces: Optional[tuple[GaTrace, ...]] = None

    @property
    def mean_weights(self) -> Optional[WeightPair]:
        if self.weights is None:
            return None
        return WeightPair.mean(self.weights)

    @model_validator(mode="after")
    def validate_weights(self) -> Self:
        weighted = self.method.rule == FusionRule.GA_WEIGHTED
        if weighted != (self.weights is not None):
            raise ValueError(f"Weights must be present exactly for GA methods ({self.method})")

        if self.weights is not None and len(self.weights) != self.fused.channels:
            raise ValueError("One weight pair per channel is required")

        return self
