import os
from functools import lru_cache

from pydantic import BaseModel, Field, ValidationError

from hopf.errors import InvalidParameters


class Settings(BaseModel):
    max_order: int = Field(64, gt=0)
    flat_samples: int = Field(32, gt=0)
    word_cap: int = Field(200_000, gt=0)
    field: str = "q"
    log_level: str = "WARNING"


def load_settings() -> Settings:
    """Read the HOPF_* environment variables; unset ones keep their defaults."""
    env = {
        "max_order": os.getenv("HOPF_MAX_ORDER"),
        "flat_samples": os.getenv("HOPF_FLAT_SAMPLES"),
        "word_cap": os.getenv("HOPF_WORD_CAP"),
        "field": os.getenv("HOPF_FIELD"),
        "log_level": os.getenv("HOPF_LOG_LEVEL"),
    }
    try:
        return Settings(**{k: v for k, v in env.items() if v is not None})
    except ValidationError as e:
        first = e.errors()[0]
        name = "HOPF_" + str(first["loc"][0]).upper()
        raise InvalidParameters(f"{name}: {first['msg']}") from e


@lru_cache(maxsize=None)
def get_settings() -> Settings:
    """Settings are read on first use; ``get_settings.cache_clear()`` rereads the environment."""
    return load_settings()
