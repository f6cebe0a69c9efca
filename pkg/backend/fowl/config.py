from pydantic_settings import BaseSettings, SettingsConfigDict
from typing import Optional


class Settings(BaseSettings):
    # App
    APP_NAME: str = "FOWL Reasoner"
    VERSION: str = "1.0.0"
    DEBUG: bool = False
    LOG_LEVEL: str = "INFO"

    # Prover - any SZS-compliant FOF prover works
    FOWL_PROVER: str = "vampire"
    FOWL_PROVER_ARGS: str = "--mode casc -t {timeout} {file}"
    FOWL_PROVER_SAT_ARGS: Optional[str] = "--mode casc_sat -t {timeout} {file}"
    FOWL_TIMEOUT: int = 30
    FOWL_PARALLELISM: int = 1
    FOWL_KEEP_PROBLEMS: bool = False
    FOWL_PROBLEM_DIR: Optional[str] = None

    # Signature alignment
    FOWL_ALIGN_RATIO: float = 0.2
    FOWL_ALIGN_MIN_DISTANCE: int = 1

    model_config = SettingsConfigDict(env_file=".env", case_sensitive=True, extra="ignore")


settings = Settings()
