from functools import lru_cache
from pydantic_settings import BaseSettings


class Settings(BaseSettings):
    app_name: str = "Holographic Secrecy Toolkit"
    environment: str = "development"
    log_level: str = "INFO"

    # Experiment runner defaults
    default_trials: int = 100
    default_seed: int = 0
    max_workers: int = 1

    # Persistent trial cache (off unless asked for)
    cache_enabled: bool = False
    cache_dir: str = ".cache/trials"

    model_config = {
        "env_file": ".env",
        "env_file_encoding": "utf-8",
        "env_prefix": "HOLOSEC_",
    }


@lru_cache(maxsize=1)
def get_settings() -> Settings:
    return Settings()
