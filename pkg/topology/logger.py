"""Logging estruturado em JSON para o reebkit.

Os registros vao sempre para stderr (e opcionalmente para um arquivo): a
saida padrao fica reservada para os resultados dos comandos.
"""

from __future__ import annotations

import datetime
import logging
import platform
import socket
import sys
import time
from contextlib import contextmanager
from pathlib import Path
from typing import Any, Dict, Iterator, Optional

from pythonjsonlogger import jsonlogger


class ReebkitJsonFormatter(jsonlogger.JsonFormatter):
    """Formatador JSON com carimbo de tempo, host e plataforma."""

    def __init__(self, *args: Any, **kwargs: Any) -> None:
        super().__init__(*args, **kwargs)
        self.hostname = socket.gethostname()
        self.platform = platform.system()

    def add_fields(
        self, log_record: Dict[str, Any], record: logging.LogRecord, message_dict: Dict[str, Any]
    ) -> None:
        super().add_fields(log_record, record, message_dict)
        log_record["timestamp"] = datetime.datetime.now().isoformat()
        log_record["hostname"] = self.hostname
        log_record["platform"] = self.platform


def setup_logger(
    name: str, log_level: str = "INFO", log_file: Optional[str] = None
) -> logging.Logger:
    """Configura um logger estruturado.

    Parameters
    ----------
    name : str
        Nome do logger (``"topology"`` cobre todos os modulos da biblioteca).
    log_level : str
        Nivel de log (DEBUG, INFO, WARNING, ERROR, CRITICAL).
    log_file : Optional[str]
        Caminho para arquivo de log adicional.

    Returns
    -------
    logging.Logger
        Logger configurado, sem handlers duplicados.
    """
    logger = logging.getLogger(name)
    level = getattr(logging, log_level.upper(), logging.INFO)
    logger.setLevel(level)

    for handler in logger.handlers[:]:
        logger.removeHandler(handler)

    formatter = ReebkitJsonFormatter(
        "%(timestamp)s %(levelname)s %(name)s %(module)s %(message)s",
        rename_fields={"levelname": "level", "module": "source"},
    )

    console_handler = logging.StreamHandler(sys.stderr)
    console_handler.setFormatter(formatter)
    logger.addHandler(console_handler)

    if log_file:
        Path(log_file).parent.mkdir(parents=True, exist_ok=True)
        file_handler = logging.FileHandler(log_file, encoding="utf-8")
        file_handler.setFormatter(formatter)
        logger.addHandler(file_handler)

    return logger


@contextmanager
def timed_stage(logger: logging.Logger, action: str, **extra: Any) -> Iterator[Dict[str, Any]]:
    """Registra inicio, sucesso (com tempo decorrido) ou falha de uma etapa.

    O dicionario entregue ao bloco pode receber campos extras que sao
    incluidos no registro de sucesso.
    """
    context: Dict[str, Any] = dict(extra)
    start = time.perf_counter()
    logger.debug("Iniciando %s", action, extra={"action": f"{action}_start", **extra})
    try:
        yield context
    except Exception as exc:
        elapsed = time.perf_counter() - start
        logger.error(
            "Falha em %s apos %.2fs: %s",
            action,
            elapsed,
            exc,
            extra={
                "action": f"{action}_error",
                "error": str(exc),
                "exception_type": type(exc).__name__,
                "execution_time": elapsed,
            },
        )
        raise
    elapsed = time.perf_counter() - start
    logger.info(
        "%s concluido em %.2fs",
        action,
        elapsed,
        extra={"action": f"{action}_success", "execution_time": elapsed, **context},
    )
