"""
Runtime Settings
Environment overrides read from RRB_* variables and an optional .env file
"""
from typing import Optional
import os

from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict


class RuntimeSettings(BaseSettings):
    """Process-level knobs that do not belong in a run config"""
    model_config = SettingsConfigDict(env_prefix="RRB_", env_file=".env", extra="ignore")

    threads: Optional[int] = Field(None, ge=1, description="Cap on parallel trial workers")
    log_level: str = Field("INFO", description="Root logging level")

    @property
    def n_jobs(self) -> int:
        """Worker count for joblib; all cores unless capped"""
        return self.threads if self.threads is not None else (os.cpu_count() or 1)


def get_settings() -> RuntimeSettings:
    return RuntimeSettings()
