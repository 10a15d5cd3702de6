from datetime import datetime

from src.core.constants import DATETIME_FORMAT, TIMEZONE


def datetime_now() -> datetime:
    return datetime.now(tz=TIMEZONE)


def timestamp_now() -> str:
    return datetime_now().strftime(DATETIME_FORMAT)
