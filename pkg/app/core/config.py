"""Application configuration using Pydantic settings.

Configuration is loaded from environment variables or .env file.
Every default matches the documented behaviour of the library and CLI.
"""

from typing import Optional

from pydantic import field_validator
from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    """Application settings.

    All settings can be overridden via environment variables.
    For example, DUTTA_EMAX can be set in the environment or .env file.
    """

    model_config = SettingsConfigDict(
        env_file=".env",
        env_file_encoding="utf-8",
        case_sensitive=True,
    )

    # Application
    PROJECT_NAME: str = "betti-harness"
    PROJECT_DESCRIPTION: str = "Exact resolutions, Adams squares and total Betti number checks"
    VERSION: str = "0.1.0"
    ENVIRONMENT: str = "development"  # development, test, production

    # Algebra
    DEFAULT_MONOMIAL_ORDER: str = "degrevlex"  # degrevlex or lex
    RESOLUTION_CAP_MARGIN: int = 2  # cap = number of variables + margin
    GB_DEGREE_CAP: Optional[int] = None
    DUTTA_EMAX: int = 3

    # Audits
    AUDIT_MODE: bool = False
    ORACLE_CROSS_CHECK: bool = False

    # Reports
    REPORT_FORMAT: str = "text"  # text or machine
    MAX_WORKERS: int = 4

    # Logging
    LOG_LEVEL: str = "WARNING"
    LOG_FORMAT: str = "text"  # json or text

    @field_validator("DEFAULT_MONOMIAL_ORDER", mode="before")
    @classmethod
    def check_order(cls, v: str) -> str:
        """Accept only the supported global orders."""
        v = str(v).strip().lower()
        if v not in ("degrevlex", "lex"):
            raise ValueError(f"unsupported monomial order: {v}")
        return v

    @field_validator("REPORT_FORMAT", mode="before")
    @classmethod
    def check_report_format(cls, v: str) -> str:
        """Accept text or machine."""
        v = str(v).strip().lower()
        if v not in ("text", "machine"):
            raise ValueError(f"unsupported report format: {v}")
        return v

    @field_validator("LOG_FORMAT", mode="before")
    @classmethod
    def check_log_format(cls, v: str) -> str:
        """Accept json or text."""
        v = str(v).strip().lower()
        if v not in ("json", "text"):
            raise ValueError(f"unsupported log format: {v}")
        return v

    @field_validator("RESOLUTION_CAP_MARGIN", "DUTTA_EMAX", "MAX_WORKERS")
    @classmethod
    def check_non_negative(cls, v: int) -> int:
        if v < 0:
            raise ValueError("must be non-negative")
        return v


# Create global settings instance
settings = Settings()
