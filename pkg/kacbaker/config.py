"""Configuration loaded from environment variables."""

import os
from dotenv import load_dotenv

from kacbaker.errors import ConfigError

# Load .env file
load_dotenv()


class Config:
    """Numerical defaults shared by the library and the CLI."""

    # Lattice enumeration (cost is 2^n * n)
    N_MAX: int = int(os.getenv("KACBAKER_N_MAX", "24"))
    ENUM_CHUNK_BITS: int = int(os.getenv("KACBAKER_ENUM_CHUNK_BITS", "16"))

    # Truncation dimensions
    SPECTRUM_DIM: int = int(os.getenv("KACBAKER_SPECTRUM_DIM", "60"))
    ZERO_SCAN_DIM: int = int(os.getenv("KACBAKER_ZERO_SCAN_DIM", "120"))
    DIM_CAP: int = int(os.getenv("KACBAKER_DIM_CAP", "240"))

    # Quadrature for the Hermite-basis Kac-Gutzwiller matrix
    QUAD_FACTOR: int = int(os.getenv("KACBAKER_QUAD_FACTOR", "4"))
    KCUT_EXTRA: int = int(os.getenv("KACBAKER_KCUT_EXTRA", "40"))
    QUAD_MAX: int = int(os.getenv("KACBAKER_QUAD_MAX", "1200"))

    # Zeta evaluation and zero finding
    EPS_CANCEL: float = float(os.getenv("KACBAKER_EPS_CANCEL", "1e-10"))
    DIFF_STEP: float = float(os.getenv("KACBAKER_DIFF_STEP", "1e-6"))
    BISECT_TOL: float = float(os.getenv("KACBAKER_BISECT_TOL", "1e-10"))
    ZERO_ACCEPT: float = float(os.getenv("KACBAKER_ZERO_ACCEPT", "1e-6"))

    # Runtime
    JOBS: int = int(os.getenv("KACBAKER_JOBS", "1"))
    LOG_LEVEL: str = os.getenv("KACBAKER_LOG_LEVEL", "WARNING").upper()
    DEBUG: bool = os.getenv("DEBUG", "false").lower() == "true"

    @classmethod
    def validate(cls) -> None:
        """Validate configured limits."""
        if not 1 <= cls.N_MAX <= 30:
            raise ConfigError(f"KACBAKER_N_MAX must be in [1, 30], got {cls.N_MAX}")
        if cls.SPECTRUM_DIM < 1 or cls.ZERO_SCAN_DIM < 1:
            raise ConfigError("truncation dimensions must be positive")
        if cls.DIM_CAP < max(cls.SPECTRUM_DIM, cls.ZERO_SCAN_DIM):
            raise ConfigError("KACBAKER_DIM_CAP must not be below the default dimensions")
        if cls.QUAD_FACTOR < 4:
            raise ConfigError("KACBAKER_QUAD_FACTOR must be at least 4")
        if cls.QUAD_MAX < 4 * cls.DIM_CAP:
            raise ConfigError(
                f"KACBAKER_QUAD_MAX={cls.QUAD_MAX} must be at least 4 * KACBAKER_DIM_CAP={4 * cls.DIM_CAP}"
            )
        if cls.EPS_CANCEL <= 0 or cls.DIFF_STEP <= 0 or cls.BISECT_TOL <= 0:
            raise ConfigError("tolerances must be positive")
        if cls.JOBS < 1:
            raise ConfigError("KACBAKER_JOBS must be at least 1")

    @classmethod
    def log_level(cls) -> str:
        """Effective log level name."""
        return "DEBUG" if cls.DEBUG else cls.LOG_LEVEL


config = Config()
