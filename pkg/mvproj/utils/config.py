"""
.env variables loader
"""

from typing import Literal, Optional

from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):  # pylint: disable=R0903
    """
    This class is used to load environment variables
    from the specified `.env.local` file and `MVPROJ_*` variables.

    These values are the lowest-precedence defaults: an experiment
    manifest and CLI flags both override them.
    """

    model_config = SettingsConfigDict(
        env_file="./.env.local",
        env_prefix="MVPROJ_",
        extra="ignore",
    )

    SEED: Optional[int] = None
    PERMUTATIONS: int = 1000
    ALPHA: float = 0.05
    CENTERS: int = 50
    BBOX_EXPANSION: float = 0.1
    EXACT_CAP: int = 1_000_000
    N_JOBS: int = 1
    BACKEND: Literal["loky", "threading", "multiprocessing"] = "loky"
    LOG_LEVEL: str = "WARNING"
    VERSION: str = "1.0"


# Load the settings from the .env file
settings = Settings()
