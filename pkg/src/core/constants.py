from datetime import timezone
from pathlib import Path
from typing import Final

BASE_DIR: Final[Path] = Path(__file__).resolve().parents[2]
REPORT_DIR: Final[Path] = BASE_DIR / "reports"

MIN_IMAGE_SIDE: Final[int] = 4
MAX_INTENSITY: Final[float] = 255.0
GRAY_LEVELS: Final[int] = 256

DECOMPOSITION_LEVELS: Final[int] = 2
WAVELET_NAME: Final[str] = "haar"
DWT_MODE: Final[str] = "symmetric"

BAND_STATISTICS: Final[int] = 10
FEATURE_BANDS: Final[int] = 4
FEATURE_LENGTH: Final[int] = BAND_STATISTICS * FEATURE_BANDS

WEIGHT_SUM_TOLERANCE: Final[float] = 1e-12

PSNR_INF: Final[str] = "inf"
SUPPORTED_SUFFIXES: Final[frozenset[str]] = frozenset({".png", ".pgm", ".ppm"})

TIMEZONE: Final[timezone] = timezone.utc
DATETIME_FORMAT: Final[str] = "%Y-%m-%dT%H:%M:%SZ"
