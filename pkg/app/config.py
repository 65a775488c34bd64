import os

from dotenv import load_dotenv
from pydantic import BaseModel, Field

# Load environment variables
load_dotenv()


class Settings(BaseModel):
    dense_threshold: int = Field(default=4096, ge=1)
    enum_max_n: int = Field(default=8, ge=1)
    enum_node_budget: int = Field(default=100_000_000, ge=1)
    check_every: int = Field(default=1000, ge=1)
    log_level: str = Field(default="INFO")
    sweep_random_n5: int = Field(default=10_000, ge=0)
    sweep_seed: int = Field(default=20100101, ge=0)


def load_settings() -> Settings:
    """Build settings from the process environment"""
    return Settings(
        dense_threshold=int(os.getenv("DSS_DENSE_THRESHOLD", "4096")),
        enum_max_n=int(os.getenv("DSS_ENUM_MAX_N", "8")),
        enum_node_budget=int(os.getenv("DSS_ENUM_NODE_BUDGET", "100000000")),
        check_every=int(os.getenv("DSS_CHECK_EVERY", "1000")),
        log_level=os.getenv("DSS_LOG_LEVEL", "INFO").upper(),
        sweep_random_n5=int(os.getenv("DSS_SWEEP_RANDOM_N5", "10000")),
        sweep_seed=int(os.getenv("DSS_SWEEP_SEED", "20100101")),
    )


settings = load_settings()
