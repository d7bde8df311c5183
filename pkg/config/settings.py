import os
from typing import Optional

from dotenv import load_dotenv
from pydantic import BaseModel, Field, field_validator

# Load environment variables
load_dotenv()

TOOL_VERSION = "0.1.0"

_LOG_LEVELS = ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL")


class RuntimeConfig(BaseModel):
    """Execution resources and debug switches."""

    threads: int = Field(default=1, description="Worker threads for realizations")
    debug: bool = Field(default=False, description="Check fixed nodes after every sweep")

    @field_validator("threads")
    @classmethod
    def validate_threads(cls, v: int) -> int:
        if v < 1:
            raise ValueError("INOF_THREADS must be at least 1")
        return v


class LoggingConfig(BaseModel):
    """Logging configuration."""

    log_level: str = Field(default="INFO")
    log_file: Optional[str] = Field(default=None)

    @field_validator("log_level")
    @classmethod
    def validate_log_level(cls, v: str) -> str:
        v = v.upper()
        if v not in _LOG_LEVELS:
            raise ValueError(f"INOF_LOG_LEVEL must be one of {', '.join(_LOG_LEVELS)}")
        return v


class Settings(BaseModel):
    """Main application settings."""

    runtime: RuntimeConfig
    logging: LoggingConfig


def _env_flag(name: str) -> bool:
    return os.getenv(name, "").strip().lower() in ("1", "true", "yes", "on")


def load_settings() -> Settings:
    """Load and validate settings from environment."""
    try:
        return Settings(
            runtime=RuntimeConfig(
                threads=int(os.getenv("INOF_THREADS", "") or os.cpu_count() or 1),
                debug=_env_flag("INOF_DEBUG"),
            ),
            logging=LoggingConfig(
                log_level=os.getenv("INOF_LOG_LEVEL", "INFO"),
                log_file=os.getenv("INOF_LOG_FILE") or None,
            ),
        )

    except ValueError as e:
        raise ValueError(f"Configuration error: {e}") from e
