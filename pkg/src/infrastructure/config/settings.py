from functools import lru_cache

from pydantic import PositiveInt
from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    """
    Runtime defaults, overridable by ``SUBSET_QUBO_*`` environment variables
    or a ``.env`` file. Command-line flags take precedence over both.
    """

    model_config = SettingsConfigDict(
        env_prefix="SUBSET_QUBO_", env_file=".env", extra="ignore"
    )

    seed: int = 0
    num_reads: PositiveInt = 100
    sweeps_per_read: PositiveInt = 1000
    threads: PositiveInt = 1
    sa_batch_size: PositiveInt = 64
    compile_chunk_size: PositiveInt = 256
    exhaustive_max_features: PositiveInt = 25
    enumerate_max_vars: PositiveInt = 22
    singular_rcond: float = 1e-10

    # Sample counts of the synthetic experiments.
    desk_samples: PositiveInt = 300
    full_scale_samples: PositiveInt = 3000
    holdout_samples: PositiveInt = 1000

    log_level: str = "INFO"


@lru_cache
def get_settings() -> Settings:
    return Settings()
