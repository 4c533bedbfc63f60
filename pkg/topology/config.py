"""Modelos de opcoes validados com pydantic e configuracao de logging.

As opcoes de computacao vem sempre de flags; apenas o nivel e o arquivo de
log podem vir do ambiente (``LOG_LEVEL`` e ``LOG_FILE``, inclusive via
``.env``), pois afetam somente diagnosticos.
"""

from __future__ import annotations

import os
from typing import Optional

from dotenv import load_dotenv
from pydantic import BaseModel, ConfigDict, Field, field_validator

LOG_LEVELS = ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL")


class RealizeOptions(BaseModel):
    """Parametros da realizacao: tamanho dos poligonos de bordo e aneis por tubo."""

    model_config = ConfigDict(frozen=True)

    p: int = Field(default=6, ge=3)
    rings: int = Field(default=2, ge=2)

    @property
    def middle_ring(self) -> int:
        return self.rings // 2


class SweepOptions(BaseModel):
    model_config = ConfigDict(frozen=True)

    extra_samples: int = Field(default=2, ge=1)


class LoggingSettings(BaseModel):
    model_config = ConfigDict(frozen=True)

    level: str = Field(default="WARNING")
    log_file: Optional[str] = None

    @field_validator("level")
    @classmethod
    def _known_level(cls, value: str) -> str:
        upper = value.upper()
        if upper not in LOG_LEVELS:
            raise ValueError(f"Nivel de log desconhecido: {value}")
        return upper


def load_logging_settings() -> LoggingSettings:
    """Carrega ``.env`` e retorna o nivel e o arquivo de log configurados.

    Returns
    -------
    LoggingSettings
        ``LOG_LEVEL`` (padrao ``WARNING``) e ``LOG_FILE`` (padrao nenhum).
    """
    load_dotenv()
    return LoggingSettings(
        level=os.getenv("LOG_LEVEL", "WARNING"),
        log_file=os.getenv("LOG_FILE") or None,
    )
