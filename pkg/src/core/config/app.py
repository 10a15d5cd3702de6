from pathlib import Path
from typing import Self

from pydantic import field_validator
from pydantic_core.core_schema import FieldValidationInfo
from pydantic_settings import BaseSettings, SettingsConfigDict

from src.core.constants import BASE_DIR, REPORT_DIR

from .validators import validate_directory


class AppConfig(BaseSettings):
    model_config = SettingsConfigDict(
        extra="ignore",
        env_prefix="WAVEFUSE_",
        env_file=BASE_DIR / ".env",
        env_file_encoding="utf-8",
    )

    report_dir: Path = REPORT_DIR

    def dataset_dir(self, dataset: str) -> Path:
        return self.report_dir / dataset

    @classmethod
    def get(cls) -> Self:
        return cls()

    @field_validator("report_dir")
    @classmethod
    def validate_report_dir(cls, field: Path, info: FieldValidationInfo) -> Path:
        validate_directory(field, info)
        return field
