from pathlib import Path

from dotenv import load_dotenv

from pydantic import Field
from pydantic_settings import BaseSettings

load_dotenv()


class Settings(BaseSettings):
    """Application settings loaded from environment variables or default values."""

    # Storage settings
    data_dir: str = Field(default="data", alias="DATA_DIR")
    report_dir: str = Field(default="data/reports/", alias="REPORT_DIR")

    # Computation settings
    workers: int = Field(default=1, alias="WITT_WORKERS")
    default_seed: int = Field(default=0, alias="WITT_SEED")
    default_degree: int = Field(default=3, alias="WITT_DEGREE")
    default_window: int = Field(default=8, alias="WITT_WINDOW")
    default_rmax: int = Field(default=6, alias="WITT_RMAX")
    omega_entry_max: int = Field(default=2, alias="WITT_OMEGA_ENTRY_MAX")

    # Caps
    exhaustive_cap: int = Field(default=4, alias="WITT_EXHAUSTIVE_CAP")
    odd_cap: int = Field(default=16, alias="WITT_ODD_CAP")
    oracle_max_dim: int = Field(default=60, alias="WITT_ORACLE_MAX_DIM")
    cyclicity_max_dim: int = Field(default=200, alias="WITT_CYCLICITY_MAX_DIM")

    # Reports
    report_timings: bool = Field(default=False, alias="WITT_REPORT_TIMINGS")

    # Logging
    log_dir: str = Field(default="data/logs/", alias="LOG_DIR")
    log_level: str = Field(default="INFO", alias="LOG_LEVEL")

    @property
    def log_path(self) -> Path:
        """Log directory as a Path."""
        return Path(self.log_dir)

    @property
    def report_path(self) -> Path:
        """Report directory as a Path."""
        return Path(self.report_dir)


settings = Settings()
