"""
Shared settings base.

Top-level settings under the SEQDR_ prefix: the log level used by the CLI
and the debug switch. Concern-specific modules carry their own prefixes.

Dependencies: pydantic_settings
System role: Foundation for all configuration classes
"""

from typing import Literal

from pydantic import Field, field_validator
from pydantic_settings import BaseSettings as PydanticBaseSettings, SettingsConfigDict

LogLevel = Literal["DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"]


class BaseSettings(PydanticBaseSettings):
    """Common settings read from SEQDR_* variables."""

    model_config = SettingsConfigDict(
        env_prefix="SEQDR_",
        env_file=".env",
        env_file_encoding="utf-8",
        case_sensitive=False,
        extra="ignore",
    )

    log_level: LogLevel = Field(default="INFO", description="Level for the stderr log handler")
    debug: bool = Field(
        default=False,
        description="Force DEBUG logging (per-stage solver and plan events)",
    )

    @field_validator("log_level", mode="before")
    @classmethod
    def _upper(cls, value: object) -> object:
        return value.upper() if isinstance(value, str) else value

    @property
    def effective_log_level(self) -> LogLevel:
        """Log level after applying the debug switch."""
        return "DEBUG" if self.debug else self.log_level
