import math
from typing import Optional

import numpy as np

from src.core.constants import MAX_INTENSITY, PSNR_INF
from src.core.utils.types import FloatArray


def round_half_away(values: FloatArray) -> FloatArray:
    return np.sign(values) * np.floor(np.abs(values) + 0.5)


def quantize(values: FloatArray) -> FloatArray:
    # clamp first, then round; result holds integers 0..255 as float64
    return round_half_away(np.clip(values, 0.0, MAX_INTENSITY))


def format_metric(value: Optional[float]) -> Optional[float | str]:
    if value is None:
        return None

    if math.isinf(value):
        return PSNR_INF if value > 0 else f"-{PSNR_INF}"

    return value


def format_csv_cell(value: Optional[float]) -> str:
    formatted = format_metric(value)
    if formatted is None:
        return ""
    return str(formatted)


def format_shape(height: int, width: int, channels: int) -> str:
    return f"{height} × {width} × {channels}"
