# settings.py
import logging
from functools import lru_cache
from typing import Optional

from dotenv import load_dotenv
from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict

# Загрузка переменных окружения
load_dotenv()


class Settings(BaseSettings):
    """Настройки вычислительного ядра (переменные NCHODGE_*)"""

    model_config = SettingsConfigDict(env_prefix="NCHODGE_", extra="ignore")

    max_cyclo_order: int = Field(120, ge=1)
    # None означает "граница цоколя + 1"
    max_degree: Optional[int] = Field(None, ge=0)
    psi_samples: int = Field(20, ge=1)
    random_seed: int = 0
    verify_workers: int = Field(1, ge=1)
    log_level: str = "INFO"
    output_format: str = "json"


@lru_cache
def get_settings() -> Settings:
    """Настройки процесса (кэшируются)"""
    return Settings()


def configure_logging(settings: Optional[Settings] = None) -> None:
    """Настройка логирования в stderr"""
    settings = settings or get_settings()
    logging.basicConfig(
        level=settings.log_level.upper(),
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
    )
