from typing import Any, Optional

from src.core.enums import MetricName
from src.core.utils.formatters import format_csv_cell, format_metric

from .base import BaseDto


class MetricReport(BaseDto):
    ie: float
    mi: float
    rmse: float
    psnr: float
    qi: Optional[float]
    sf: float

    def value(self, name: MetricName) -> Optional[float]:
        value: Optional[float] = getattr(self, name.value)
        return value

    def to_dict(self) -> dict[str, Any]:
        return {name.value: format_metric(self.value(name)) for name in MetricName}

    def to_row(self) -> list[str]:
        return [format_csv_cell(self.value(name)) for name in MetricName]
