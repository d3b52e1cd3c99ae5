from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    SIM_THREADS: int = 0
    LOG_LEVEL: str = "INFO"
    SHOW_PROGRESS: bool = False
    DESK_N_ANTENNAS: int = 16
    DESK_N_RF: int = 3
    DESK_TRIALS: int = 2000
    DEFAULT_SEED: int = 7
    BEAMPATTERN_SAMPLES: int = 2048
    LOBE_THRESHOLD_DB: float = 10.0
    ORACLE_MAX_ITER: int = 1_000_000
    ORACLE_TOL: float = 1e-8
    QUICK_INSTANCES: int = 50
    FULL_INSTANCES: int = 200

    model_config = SettingsConfigDict(env_file="src/.env", extra="ignore")


settings = Settings()
