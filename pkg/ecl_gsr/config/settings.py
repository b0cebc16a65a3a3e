"""Runtime settings for ecl-gsr."""

from pathlib import Path

from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    """Process-wide settings read from the environment or a ``.env`` file."""

    model_config = SettingsConfigDict(
        env_file=".env",
        env_file_encoding="utf-8",
        env_prefix="ECL_GSR_",
        case_sensitive=False,
        extra="ignore",
    )

    # Logging settings
    log_level: str = "INFO"
    log_format: str = "json"  # json or console

    # Output settings
    output_dir: Path = Path("./runs")
    show_progress: bool = True

    # Refinement limits
    dense_node_limit: int = 5000  # dense V x V edge probabilities up to this size
    max_full_graph_nodes: int = 50000
    candidate_k: int = 20  # cosine neighbours per node in candidate mode


# Global settings instance
settings = Settings()
