from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    model_config = SettingsConfigDict(env_prefix="VOA_", env_file=".env", extra="ignore")

    app_name: str = "Free-Field VOA Verification Service"
    app_version: str = "1.0.0"
    debug: bool = False

    # Suite defaults (CLI flags and request fields override these)
    default_ell: int = 2
    default_max_weight: str = "3"
    default_bound: int = 8

    # Guard on the number of ambient vectors in one graded piece
    max_fock_dimension: int = 5000

    # Report output
    json_indent: int = 2
    record_timings: bool = False

    # Service configuration
    host: str = "0.0.0.0"
    port: int = 8000
    log_level: str = "INFO"


settings = Settings()
