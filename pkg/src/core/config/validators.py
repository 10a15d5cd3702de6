import math
from typing import Any

from pydantic_core.core_schema import FieldValidationInfo


def validate_positive(value: float, info: FieldValidationInfo) -> float:
    field_name = info.field_name or "UNKNOWN_FIELD"

    if not math.isfinite(value) or value <= 0:
        raise ValueError(f"{field_name} must be a finite number greater than 0")

    return value


def validate_directory(value: Any, info: FieldValidationInfo) -> Any:
    env_prefix = info.config.get("env_prefix", "") if info.config else ""
    field_name = info.field_name.upper() if info.field_name else "UNKNOWN_FIELD"
    full_env_var_name = f"{env_prefix}{field_name}"

    if value.exists() and not value.is_dir():
        raise ValueError(f"{full_env_var_name} points to a file, expected a directory")

    return value
