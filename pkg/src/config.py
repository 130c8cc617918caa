"""Runtime configuration read from the environment (and a local .env file)."""

import os

from dotenv import load_dotenv
from pydantic import BaseModel, Field


def _env_flag(name: str, default: str = "false") -> bool:
    return os.getenv(name, default).lower() in ("true", "1", "yes")


class Settings(BaseModel):
    """Caps and switches shared by every whylog operation.

    Attributes:
        max_tautology_atoms: Largest atom count the truth-table test accepts.
        max_profiles: Largest number of distinct term profiles saturation
            may discover before giving up.
        max_oracle_terms: Largest number of terms the brute-force oracle
            enumerates.
        max_completion_rounds: Rounds of introspective completion before
            giving up.
        log_level: Level handed to logging.basicConfig by the CLI.
        op_logging: Print coloured per-command call/result lines on stderr.
    """

    max_tautology_atoms: int = Field(default=20, ge=1)
    max_profiles: int = Field(default=4096, ge=1)
    max_oracle_terms: int = Field(default=200_000, ge=1)
    max_completion_rounds: int = Field(default=64, ge=1)
    log_level: str = "WARNING"
    op_logging: bool = False

    @classmethod
    def from_env(cls, env_file: str | None = None) -> "Settings":
        """Build settings from WHYLOG_* variables, after loading env_file (default: the nearest .env)."""
        load_dotenv(env_file)
        return cls(
            max_tautology_atoms=int(os.getenv("WHYLOG_MAX_TAUTOLOGY_ATOMS", "20")),
            max_profiles=int(os.getenv("WHYLOG_MAX_PROFILES", "4096")),
            max_oracle_terms=int(os.getenv("WHYLOG_MAX_ORACLE_TERMS", "200000")),
            max_completion_rounds=int(os.getenv("WHYLOG_MAX_COMPLETION_ROUNDS", "64")),
            log_level=os.getenv("WHYLOG_LOG_LEVEL", "WARNING").upper(),
            op_logging=_env_flag("WHYLOG_OP_LOGGING"),
        )


# Global settings instance for easy import
_settings = Settings.from_env()


def get_settings() -> Settings:
    """Get global settings instance."""
    return _settings


def configure(**overrides) -> Settings:
    """
    Replace the global settings, keeping unspecified fields.

    Example:
        configure(max_profiles=10_000, log_level="DEBUG")
    """
    global _settings
    _settings = Settings(**{**_settings.model_dump(), **overrides})
    return _settings
