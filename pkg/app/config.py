"""Application configuration management using Pydantic Settings.

Centralizes all defaults with type validation and environment variable support.
Every value can be overridden with a ``FAULTMATCH_``-prefixed variable or a
``.env`` file; CLI flags take precedence over both.
"""

import math
from pathlib import Path
from typing import Literal, Optional

from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict

PROJECT_ROOT = Path(__file__).resolve().parent.parent


class Settings(BaseSettings):
    """Application settings with validation and type safety."""

    model_config = SettingsConfigDict(
        env_file=".env",
        env_file_encoding="utf-8",
        env_prefix="FAULTMATCH_",
        case_sensitive=False,
        extra="ignore",  # Allow extra fields in .env
    )

    # Text pipeline
    stopwords_path: Path = PROJECT_ROOT / "data" / "stopwords.txt"
    stems_path: Path = PROJECT_ROOT / "data" / "stems.tsv"

    # Index
    index_path: Path = Path("./fault_index.json")
    include_attachment: bool = True

    # Retrieval
    top_k: int = Field(default=10, ge=1)
    output_format: Literal["jsonl", "table", "bars"] = "table"
    max_tf_mode: Literal["within_text", "literal_paper"] = "within_text"
    log_base: float = Field(default=math.e, gt=1.0)
    # At most the corpus size N of the index being queried
    unseen_doc_freq: Optional[float] = Field(default=None, gt=0.0)

    # PageRank
    pagerank_tol: float = Field(default=1e-9, gt=0.0)
    pagerank_max_iter: int = Field(default=1000, ge=0)
    pagerank_damping: Optional[float] = Field(default=None, gt=0.0, le=1.0)

    # Clustering
    kmeans_max_iter: int = Field(default=100, ge=1)
    kmeans_seed: int = 42

    # Logging
    log_level: Literal["DEBUG", "INFO", "WARNING", "ERROR"] = "INFO"


# Global settings instance - initialized once at startup
settings = Settings()
