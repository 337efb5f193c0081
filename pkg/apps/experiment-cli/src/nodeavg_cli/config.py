from pydantic_settings import BaseSettings


class CliConfig(BaseSettings):
    """Configuration for the experiment CLI."""
    model_config = {"env_prefix": "NODEAVG_"}

    # Parallel trials per run; outputs are seed-ordered regardless
    threads: int = 1
    log_level: str = "info"
    environment: str = "development"
    log_dir: str | None = None
    max_rounds: int = 10_000


# Create a single config instance to be used across the application
config = CliConfig()
