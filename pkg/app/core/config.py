from pydantic_settings import BaseSettings

class Settings(BaseSettings):
    # Output
    OUTPUT_DIR: str = "artifacts"
    DEFAULT_FORMAT: str = "json"
    
    # Workers
    JOBS: int = 1
    
    # Search limits
    ISOMORPHISM_BUDGET: int = 2_000_000
    GROUP_CLOSURE_CAP: int = 100_000
    COLORING_SEARCH_MAX_VERTICES: int = 30
    SNF_TRANSFORM_MAX_SIZE: int = 60
    
    # Logging
    LOG_LEVEL: str = "INFO"
    
    class Config:
        env_file = ".env"
        case_sensitive = True

settings = Settings()
