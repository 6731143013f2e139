# leftcorner/config.py
from typing import List

from pydantic_settings import BaseSettings


class LeftCornerSettings(BaseSettings):
    """Toolkit configuration, read from LEFTCORNER_* variables and .env"""

    # Semiring used when a grammar file does not name one
    SEMIRING: str = "real"

    # Logging
    LOG_LEVEL: str = "WARNING"

    # Approximate equality for real/viterbi carriers
    REL_TOL: float = 1e-9
    ABS_TOL: float = 1e-12

    # Null-weight fixed point
    FIXED_POINT_TOL: float = 1e-12
    FIXED_POINT_MAX_ITERS: int = 10_000

    # Default string length bound for equivalence checks
    EQUIVALENCE_MAX_LEN: int = 4

    # Treebank label annotation delimiters, in priority order
    STRIP_DELIMITERS: List[str] = ["-", "=", "##"]

    class Config:
        env_file = ".env"
        env_prefix = "LEFTCORNER_"
        extra = "ignore"


def get_settings() -> LeftCornerSettings:
    """Get toolkit settings from environment"""
    return LeftCornerSettings()
