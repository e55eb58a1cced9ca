"""
Application Configuration

Centralized settings for the spectral lab.
Only the output directory is read from the environment (or `.env`);
every other setting keeps its default unless passed explicitly.
"""

from pydantic_settings import BaseSettings, PydanticBaseSettingsSource
from pydantic import Field, field_validator, model_validator
from pydantic.fields import FieldInfo
from pathlib import Path
from typing import Any, Dict, Optional, Tuple, Type

# Keys an environment source may contribute
ENV_KEYS = frozenset({"output_dir", "whitham_output_dir"})


class OutputDirOnlySource(PydanticBaseSettingsSource):
    """Wraps an environment source and passes through the output directory alone"""

    def __init__(self, settings_cls: Type[BaseSettings], source: PydanticBaseSettingsSource):
        super().__init__(settings_cls)
        self.source = source

    def get_field_value(self, field: FieldInfo, field_name: str) -> Tuple[Any, str, bool]:
        return None, field_name, False

    def __call__(self) -> Dict[str, Any]:
        return {k: v for k, v in self.source().items() if k.lower() in ENV_KEYS}


class Settings(BaseSettings):
    """Application settings"""

    # Application
    app_name: str = "Whitham Spectral Lab"
    app_version: str = "1.0.0"
    debug: bool = False
    log_level: str = "INFO"
    log_format: str = "json"  # json or text

    # Output Configuration
    output_dir: str = Field(default="./runs", alias="WHITHAM_OUTPUT_DIR")
    series_float_format: str = "%.17g"

    # Execution Defaults
    default_jobs: int = 1
    default_seed: int = 20240521

    # Verification Desk Sizes
    verify_corpus_size: int = 1000
    verify_product_pairs: int = 500
    verify_energy_runs: int = 20

    # Monitor Defaults
    monitor_timeout: float = 600.0
    ladder_cap: float = 1.0e6
    boundary_mass_threshold: float = 1.0e-6

    model_config = {
        "env_file": ".env",
        "case_sensitive": False,
        "extra": "ignore",
        "populate_by_name": True,
    }

    @classmethod
    def settings_customise_sources(
        cls,
        settings_cls: Type[BaseSettings],
        init_settings: PydanticBaseSettingsSource,
        env_settings: PydanticBaseSettingsSource,
        dotenv_settings: PydanticBaseSettingsSource,
        file_secret_settings: PydanticBaseSettingsSource,
    ) -> Tuple[PydanticBaseSettingsSource, ...]:
        """Explicit values first, then WHITHAM_OUTPUT_DIR from the environment or .env"""
        return (
            init_settings,
            OutputDirOnlySource(settings_cls, env_settings),
            OutputDirOnlySource(settings_cls, dotenv_settings),
        )

    @field_validator('log_level', mode='before')
    @classmethod
    def normalize_log_level(cls, v):
        """Accept log levels in any case"""
        if isinstance(v, str):
            return v.strip().upper()
        return v

    @field_validator('log_format', mode='before')
    @classmethod
    def normalize_log_format(cls, v):
        """Only json and text formats are known"""
        if isinstance(v, str):
            v = v.strip().lower()
            if v not in ("json", "text"):
                raise ValueError(f"Unknown log format: {v}")
        return v

    @model_validator(mode='after')
    def clamp_defaults(self):
        """Keep execution defaults in range"""
        if self.default_jobs < 1:
            self.default_jobs = 1
        return self

    def get_output_path(self, override: Optional[str] = None) -> Path:
        """Get the output directory, preferring an explicit override"""
        return Path(override or self.output_dir).expanduser().resolve()


# Create settings instance
settings = Settings()
