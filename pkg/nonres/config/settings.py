import logging
import os

from pydantic_settings import BaseSettings, SettingsConfigDict

logger = logging.getLogger(__name__)


class NonresSettings(BaseSettings):
    """Configuration settings for the character / L-function engine."""

    model_config = SettingsConfigDict(
        env_prefix="NONRES_",
        env_file=os.path.join(os.getenv("NONRES_CONFIG_DIR", "."), ".env"),
        case_sensitive=False,
        extra="ignore",
    )

    # Character tables
    CHARACTER_GROUP_CAP: int = 100_000  # full-group enumeration
    CHARACTER_SINGLE_CAP: int = 10_000_000  # a single character's dlog tables

    # Sieve
    TABLE_LIMIT: int = 10_000_000

    # Hurwitz / L-function evaluation
    HURWITZ_TOLERANCE: float = 1e-14
    HURWITZ_BACKEND: str = "euler_maclaurin"  # or "mpmath"
    MPMATH_DPS: int = 30
    HURWITZ_BATCH_ELEMENTS: int = 4_000_000  # S*A*M cap per numpy chunk
    HEIGHT_CAP: float = 500.0

    # Zero scanning and winding
    SCAN_STEP: float = 0.01
    GAMMA_TOLERANCE: float = 1e-8
    SCAN_REFINEMENTS: int = 2
    WINDING_SPACING: float = 0.05
    WINDING_MAX_DEPTH: int = 24
    WINDING_ZERO_FLOOR: float = 1e-8
    WINDING_NUDGES: int = 8
    OFFLINE_MIN_SIDE: float = 1e-4

    # Kernel
    KERNEL_SINGULAR_RADIUS: float = 1e-6
    QUADRATURE_LIMIT: int = 500

    # Explicit formula
    CONTOUR_THETA: float = 0.1

    # Processing
    MAX_WORKERS: int = 1
    LOG_LEVEL: str = "WARNING"


# Global settings instance
nonres_settings = NonresSettings()


def validate_config(settings: NonresSettings = nonres_settings) -> bool:
    """Validate that the configured values are usable together."""
    errors = []

    if settings.HURWITZ_BACKEND not in ("euler_maclaurin", "mpmath"):
        errors.append(f"Unknown Hurwitz backend: {settings.HURWITZ_BACKEND}")
    if not 0 < settings.SCAN_STEP <= 0.05:
        errors.append("SCAN_STEP must lie in (0, 0.05]")
    if settings.CHARACTER_GROUP_CAP > settings.CHARACTER_SINGLE_CAP:
        errors.append("CHARACTER_GROUP_CAP cannot exceed CHARACTER_SINGLE_CAP")
    if settings.MAX_WORKERS < 1:
        errors.append("MAX_WORKERS must be at least 1")

    for error in errors:
        logger.error(f"Configuration Error: {error}")
    return not errors
