from typing import Any, Self

from pydantic import BaseModel, ConfigDict, ValidationError, field_validator
from pydantic_core.core_schema import FieldValidationInfo

from src.core.exceptions import InvalidConfigError

from .validators import validate_positive


class GaConfig(BaseModel):
    model_config = ConfigDict(extra="forbid", frozen=True)

    initial_diff: float = 0.1
    trials: int = 10
    max_generations: int = 100
    termination_epsilon: float = 0.0001
    refine_segments: bool = True

    @classmethod
    def build(cls, **values: Any) -> Self:
        try:
            return cls.model_validate(values)
        except ValidationError as exception:
            raise InvalidConfigError(_describe(exception)) from exception

    def with_overrides(self, **overrides: Any) -> Self:
        update = {k: v for k, v in overrides.items() if v is not None}
        return self.build(**(self.model_dump() | update))

    @field_validator("initial_diff", "termination_epsilon")
    @classmethod
    def validate_positive_real(cls, value: float, info: FieldValidationInfo) -> float:
        return validate_positive(value, info)

    @field_validator("trials")
    @classmethod
    def validate_trials(cls, value: int) -> int:
        if value < 2:
            raise ValueError("trials must be at least 2")
        return value

    @field_validator("max_generations")
    @classmethod
    def validate_max_generations(cls, value: int) -> int:
        if value < 1:
            raise ValueError("max_generations must be at least 1")
        return value


def _describe(exception: ValidationError) -> str:
    parts = []
    for error in exception.errors():
        location = ".".join(str(item) for item in error["loc"]) or "ga"
        parts.append(f"{location}: {error['msg']}")
    return "; ".join(parts)
