"""Configuration module - loads and validates environment variables."""

import logging
import os
from pathlib import Path
from typing import Optional

from dotenv import load_dotenv

# Load .env file from project root
load_dotenv()

# Base paths
PROJECT_ROOT = Path(__file__).parent.parent
OUTPUT_DIR = PROJECT_ROOT / "output"


def _env_float(name: str, default: float) -> Optional[float]:
    """Read a float setting; None marks an unparsable value for validate()."""
    raw = os.getenv(name)
    if raw is None or raw.strip() == "":
        return default
    try:
        return float(raw)
    except ValueError:
        return None


def _env_int(name: str, default: int) -> Optional[int]:
    """Read an integer setting; None marks an unparsable value for validate()."""
    raw = os.getenv(name)
    if raw is None or raw.strip() == "":
        return default
    try:
        return int(raw)
    except ValueError:
        return None


class Config:
    """Toolkit configuration loaded from environment variables."""

    # Extended-precision oracle mode (decimal digits, 0 = off)
    PRECISION: Optional[int] = _env_int("ELLIPUC_PRECISION", 0)

    # Numerical tolerances
    TAIL_EPS: Optional[float] = _env_float("ELLIPUC_TAIL_EPS", 1e-14)
    TOLERANCE: Optional[float] = _env_float("ELLIPUC_TOLERANCE", 1e-9)
    DEGENERACY_TOL: Optional[float] = _env_float("ELLIPUC_DEGENERACY_TOL", 1e-10)
    SPARSITY_THRESHOLD: Optional[float] = _env_float("ELLIPUC_SPARSITY_THRESHOLD", 1e-8)

    # Rational search bound for lattice and resonance checks
    RATIONAL_BOUND: Optional[int] = _env_int("ELLIPUC_RATIONAL_BOUND", 10**6)

    # Trapezoid nodes for continuous weights
    QUADRATURE_NODES: Optional[int] = _env_int("ELLIPUC_QUADRATURE_NODES", 4096)

    # CLI defaults
    DEFAULT_K: Optional[float] = _env_float("ELLIPUC_DEFAULT_K", 0.6)
    DEFAULT_W: str = os.getenv("ELLIPUC_DEFAULT_W", "0.31")

    # Logging
    LOG_LEVEL: str = os.getenv("ELLIPUC_LOG_LEVEL", "INFO").upper()
    LOG_TO_FILE: bool = os.getenv("ELLIPUC_LOG_TO_FILE", "false").lower() in ("1", "true", "yes")

    @classmethod
    def validate(cls) -> list[str]:
        """Validate configuration. Returns list of invalid setting names."""
        invalid = []

        if cls.PRECISION is None or cls.PRECISION < 0:
            invalid.append("ELLIPUC_PRECISION")

        positive = {
            "ELLIPUC_TAIL_EPS": cls.TAIL_EPS,
            "ELLIPUC_TOLERANCE": cls.TOLERANCE,
            "ELLIPUC_DEGENERACY_TOL": cls.DEGENERACY_TOL,
            "ELLIPUC_SPARSITY_THRESHOLD": cls.SPARSITY_THRESHOLD,
            "ELLIPUC_RATIONAL_BOUND": cls.RATIONAL_BOUND,
            "ELLIPUC_QUADRATURE_NODES": cls.QUADRATURE_NODES,
        }
        for name, value in positive.items():
            if value is None or value <= 0:
                invalid.append(name)

        if cls.DEFAULT_K is None or not 0.0 < cls.DEFAULT_K < 1.0:
            invalid.append("ELLIPUC_DEFAULT_K")

        if not isinstance(logging.getLevelName(cls.LOG_LEVEL), int):
            invalid.append("ELLIPUC_LOG_LEVEL")

        return invalid

    @classmethod
    def is_valid(cls) -> bool:
        """Check if all configuration values are usable."""
        return len(cls.validate()) == 0


# Convenience access
config = Config()
