import os
from os import getenv

from pydantic import field_validator
from pydantic_settings import BaseSettings


class AppSettings(BaseSettings):
    APP_NAME: str = getenv("APP_NAME", default="ecii")
    APP_DESCRIPTION: str | None = getenv(
        "APP_DESCRIPTION",
        default="Concept induction from positive and negative examples",
    )
    APP_VERSION: str | None = getenv("APP_VERSION", default="0.1.0")


class EngineSettings(BaseSettings):
    ECII_THREADS: int = int(getenv("ECII_THREADS", default="0"))
    ECII_EXPRESSION_CAP: int = int(getenv("ECII_EXPRESSION_CAP", default="10000"))

    @field_validator("ECII_THREADS", "ECII_EXPRESSION_CAP", mode="before")
    @classmethod
    def parse_non_negative(cls, v: str | int) -> int:
        value = int(v)
        # 0 means auto (threads) or no cap (expressions)
        return max(value, 0)


class LoggingSettings(BaseSettings):
    LOG_LEVEL: str = getenv("LOG_LEVEL", default="INFO")
    DEBUG: bool = getenv("DEBUG", default="false").lower() == "true"

    @field_validator("LOG_LEVEL", mode="before")
    @classmethod
    def parse_level(cls, v: str) -> str:
        return str(v or "INFO").upper()


class Settings(AppSettings, EngineSettings, LoggingSettings):
    pass


def resolve_workers(settings: EngineSettings) -> int:
    """Worker count for per-role search stages."""
    if settings.ECII_THREADS > 0:
        return settings.ECII_THREADS
    return os.cpu_count() or 1


settings = Settings()
