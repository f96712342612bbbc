import os
from enum import Enum

from pydantic import Field, field_validator
from pydantic_settings import BaseSettings, SettingsConfigDict

current_file_dir = os.path.dirname(os.path.realpath(__file__))
env_path = os.path.join(current_file_dir, "..", "..", ".env")


class StateSumBaseSettings(BaseSettings):
    model_config = SettingsConfigDict(env_file=env_path, env_prefix="STATESUM_", extra="ignore")


class AppSettings(StateSumBaseSettings):
    APP_NAME: str = "statesum4"
    APP_DESCRIPTION: str | None = "State-sum invariants of triangulated 4-manifolds"
    APP_VERSION: str | None = "0.1.0"


class EngineOption(Enum):
    FAST = "fast"
    GENERIC = "generic"
    ORACLE = "oracle"


class EngineSettings(StateSumBaseSettings):
    DEFAULT_ENGINE: EngineOption = EngineOption.FAST
    WORKERS: int = Field(default=1, ge=1)
    ORACLE_BUDGET: int = Field(default=2**25, gt=0)
    HOM_BUDGET: int = Field(default=2**32, gt=0)


class VerificationSettings(StateSumBaseSettings):
    EXHAUSTIVE_LIMIT: int = Field(default=10**5, gt=0)
    SAMPLE_SIZE: int = Field(default=2000, gt=0)
    CHECK_HEXAGON: bool = True


class WalkSettings(StateSumBaseSettings):
    MAX_VERTICES: int = Field(default=10, ge=6)


class LoggingSettings(StateSumBaseSettings):
    LOG_LEVEL: str = "INFO"
    LOG_TO_FILE: bool = False
    LOG_DIR: str = os.path.join(current_file_dir, "..", "logs")
    LOG_FILE_NAME: str = "statesum.log"

    @field_validator("LOG_LEVEL")
    @classmethod
    def _known_level(cls, v: str) -> str:
        level = v.strip().upper()
        if level not in {"DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"}:
            raise ValueError(f"Unknown log level: {v}")
        return level


class Settings(
    AppSettings,
    EngineSettings,
    VerificationSettings,
    WalkSettings,
    LoggingSettings,
):
    pass


settings = Settings()
