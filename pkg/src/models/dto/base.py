from typing import Any

import numpy as np
from pydantic import BaseModel as _BaseModel
from pydantic import ConfigDict

from src.core.utils.types import FloatArray


class BaseDto(_BaseModel):
    model_config = ConfigDict(
        extra="ignore",
        populate_by_name=True,
        frozen=True,
    )


class ArrayDto(BaseDto):
    model_config = ConfigDict(arbitrary_types_allowed=True)


def as_frozen_array(value: Any, ndim: int) -> FloatArray:
    array = np.array(value, dtype=np.float64, copy=True)
    if array.ndim != ndim:
        raise ValueError(f"expected a {ndim}-dimensional array, got shape {array.shape}")
    array.flags.writeable = False
    return array
