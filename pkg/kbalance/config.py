import logging
from functools import lru_cache
from pathlib import Path
from typing import Any, Dict, Optional

from dotenv import dotenv_values
from pydantic_settings import BaseSettings, SettingsConfigDict

logger = logging.getLogger(__name__)


class EngineSettings(BaseSettings):
    """Process-wide defaults, overridable through KBAL_* environment variables or .env"""

    model_config = SettingsConfigDict(env_prefix="KBAL_", env_file=".env", extra="ignore")

    log_level: str = "WARNING"
    prefix_length: int = 10000
    window_limit: int = 50
    verify_trials: int = 20
    verify_seed: int = 0
    verify_length: int = 10000
    oracle_max_length: int = 500
    frequency_tolerance: str = "1/1000"


@lru_cache(maxsize=1)
def get_settings() -> EngineSettings:
    """Get or initialize the EngineSettings"""
    settings = EngineSettings()
    logger.debug(f"[Config] Loaded settings: {settings.model_dump()}")
    return settings


def load_manifest(path: Optional[Path]) -> Dict[str, Any]:
    """Read a key=value experiment manifest; keys name CLI options"""
    if path is None:
        return {}
    if not Path(path).is_file():
        raise FileNotFoundError(f"config file not found: {path}")
    values = {key.strip(): value for key, value in dotenv_values(path).items() if value is not None}
    logger.info(f"[Config] Manifest {path} provides {sorted(values)}")
    return values
