# src/config.py

"""
Configuration module for the elliptic-curve census.

This module handles all application configuration with proper validation,
type checking, and environment variable management.
"""

import logging
from functools import lru_cache
from pathlib import Path
from typing import Literal

from dotenv import load_dotenv
from pydantic import Field, ValidationInfo, field_validator, model_validator
from pydantic_settings import BaseSettings, SettingsConfigDict

# Configure logging
logger = logging.getLogger(__name__)


def find_project_root(marker_file: str = ".env") -> Path:
    """
    Find the project root by searching for a marker file.

    Args:
        marker_file: File to search for (default: .env)

    Returns:
        Path to the project root directory
    """
    current = Path(__file__).resolve()
    for parent in [current] + list(current.parents):
        if (parent / marker_file).exists():
            return parent

    # Fallback to parent directory if .env not found
    logger.debug(f"{marker_file} not found, using parent directory")
    return Path(__file__).resolve().parent.parent


# Load environment variables
try:
    project_root = find_project_root()
    env_path = project_root / ".env"
    if env_path.exists():
        load_dotenv(env_path)
        logger.info(f"Loaded environment variables from {env_path}")
except Exception as e:
    logger.warning(f"Could not load .env file: {e}")


class CensusSettings(BaseSettings):
    """Configuration for curve enumeration and the lattice oracle."""

    model_config = SettingsConfigDict(
        env_prefix="EC_CENSUS_",
        case_sensitive=False,
        extra="ignore"
    )

    threads: int = Field(
        default=1,
        description="Worker processes used by enumeration and the oracle",
        ge=1,
        le=256
    )
    oracle_box: int = Field(
        default=2,
        description="Default coordinate radius B of the oracle box",
        ge=1
    )
    max_degree_limit: int = Field(
        default=10_000,
        description="Largest degree bound accepted by the front ends",
        gt=0
    )

    @model_validator(mode="after")
    def validate_settings(self):
        """Log configuration"""
        logger.debug(f"Census configured: threads={self.threads}, oracle_box={self.oracle_box}")
        return self


class BoundsSettings(BaseSettings):
    """Configuration for the numerical constants of the counting bounds."""

    model_config = SettingsConfigDict(
        env_prefix="EC_BOUNDS_",
        case_sensitive=False,
        extra="ignore"
    )

    quad_epsrel: float = Field(
        default=1e-11,
        description="Relative tolerance requested from the quadrature routines",
        gt=0.0,
        le=1e-9
    )
    safety_factor: float = Field(
        default=1e-6,
        description="Relative inflation applied to quadrature-computed constants",
        ge=0.0,
        le=1e-2
    )

    @field_validator("safety_factor")
    @classmethod
    def validate_safety_factor(cls, v: float, info: ValidationInfo) -> float:
        """The inflation must dominate the quadrature error."""
        epsrel = info.data.get("quad_epsrel", 1e-11)
        if v < epsrel:
            raise ValueError("safety_factor must not be smaller than quad_epsrel")
        return v


class ApiSettings(BaseSettings):
    """Configuration for the HTTP front end."""

    model_config = SettingsConfigDict(
        env_prefix="EC_API_",
        case_sensitive=False,
        extra="ignore"
    )

    host: str = Field(
        default="0.0.0.0",
        description="Bind address for the API server",
        min_length=1
    )
    port: int = Field(
        default=8000,
        description="Port for the API server",
        ge=1,
        le=65535
    )


class AppSettings(BaseSettings):
    """Main application settings container."""

    model_config = SettingsConfigDict(
        case_sensitive=False,
        extra="ignore"
    )

    environment: Literal["development", "staging", "production"] = Field(
        default="development",
        description="Application environment",
        alias="ENVIRONMENT"
    )
    debug: bool = Field(
        default=False,
        description="Enable debug mode",
        alias="DEBUG"
    )
    log_level: str = Field(
        default="WARNING",
        description="Logging level",
        alias="LOG_LEVEL"
    )

    # Nested settings
    census: CensusSettings = Field(default_factory=CensusSettings)
    bounds: BoundsSettings = Field(default_factory=BoundsSettings)
    api: ApiSettings = Field(default_factory=ApiSettings)


@lru_cache()
def get_settings() -> AppSettings:
    """
    Get cached application settings.

    This function is cached to ensure settings are loaded only once.
    Use this function throughout the package to access configuration.

    Returns:
        AppSettings: Application configuration object

    Example:
        >>> settings = get_settings()
        >>> print(settings.census.threads)
        1
    """
    try:
        settings = AppSettings()
        logger.debug("Settings loaded successfully")
        return settings
    except Exception as e:
        logger.error(f"Failed to load settings: {e}")
        raise
