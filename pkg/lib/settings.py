"""Configuration management for algext."""

from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    """Workbench defaults loaded from ``ALGEXT_*`` environment variables."""

    resolution_cap: int = Field(6, ge=0, description="Highest homological degree computed")
    fuzz_trials: int | None = Field(
        None, ge=1, description="Trial count for every harness; None keeps each harness default"
    )
    fuzz_seed: int = Field(0, description="Default master seed for fuzz harnesses")
    max_rank: int = Field(4, ge=1, description="Default largest algebra rank generated")
    jobs: int = Field(1, ge=1, description="Worker processes for fuzz trials")
    regularity_enumeration_limit: int = Field(
        4096, ge=1, description="Largest B_0 enumerated exhaustively when checking regularity"
    )
    log_level: str = "WARNING"

    model_config = SettingsConfigDict(
        env_prefix="ALGEXT_",
        env_file=".env",
        env_file_encoding="utf-8",
        case_sensitive=False,
    )


def get_settings() -> Settings:
    """Get application settings."""
    return Settings()
