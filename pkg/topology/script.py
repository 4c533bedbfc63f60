"""Gerenciador de contexto compartilhado pelos comandos da CLI.

:class:`PipelineScript` centraliza o boilerplate de cada comando: leitura da
configuracao de logging, preparacao dos loggers estruturados, registro de
inicio e fim com tempo decorrido e linhas de status coloridas em stderr.
"""

from __future__ import annotations

import logging
import sys
import time
from contextlib import AbstractContextManager
from types import TracebackType
from typing import Any, Dict, Optional, Type

from colorama import Fore, Style, just_fix_windows_console
from pydantic import ValidationError

from .config import LoggingSettings, load_logging_settings
from .logger import setup_logger, timed_stage

LIBRARY_LOGGER = "topology"


class PipelineScript:
    """Contexto de execucao de um comando.

    Parameters
    ----------
    command : str
        Nome do comando, usado nos registros.
    log_level : str | None
        Sobrepoe ``LOG_LEVEL`` quando informado.
    log_file : str | None
        Sobrepoe ``LOG_FILE`` quando informado.
    """

    def __init__(
        self,
        command: str,
        log_level: Optional[str] = None,
        log_file: Optional[str] = None,
    ) -> None:
        self.command = command
        self.log_level = log_level
        self.log_file = log_file
        self.settings: Optional[LoggingSettings] = None
        self.logger: logging.Logger = logging.getLogger("reebkit")
        self.start_time: float = 0.0

    def __enter__(self) -> "PipelineScript":
        just_fix_windows_console()
        try:
            settings = load_logging_settings()
        except ValidationError as exc:
            self.status(f"LOG_LEVEL invalido, usando WARNING: {exc.errors()[0]['msg']}", ok=False)
            settings = LoggingSettings()
        overrides: Dict[str, Any] = {}
        if self.log_level:
            overrides["level"] = self.log_level.upper()
        if self.log_file:
            overrides["log_file"] = self.log_file
        self.settings = LoggingSettings(**{**settings.model_dump(), **overrides})

        setup_logger(LIBRARY_LOGGER, self.settings.level, self.settings.log_file)
        self.logger = setup_logger("reebkit", self.settings.level, self.settings.log_file)
        self.start_time = time.perf_counter()
        self.log(f"Iniciando {self.command}", extra={"action": "script_start"})
        return self

    def __exit__(
        self,
        exc_type: Optional[Type[BaseException]],
        exc: Optional[BaseException],
        tb: Optional[TracebackType],
    ) -> None:
        elapsed = time.perf_counter() - self.start_time
        if exc_type is not None and not issubclass(exc_type, SystemExit):
            self.log(
                f"Erro em {self.command}: {exc}",
                level="ERROR",
                extra={
                    "exception_type": exc_type.__name__,
                    "exception": str(exc),
                    "action": "script_error",
                },
            )
        self.log(
            f"Finalizando {self.command}",
            extra={"action": "script_end", "execution_time": elapsed},
        )

    def log(
        self, message: str, level: str = "INFO", extra: Optional[Dict[str, Any]] = None
    ) -> None:
        """Registra ``message`` no logger do comando com nivel e contexto."""
        self.logger.log(getattr(logging, level.upper(), logging.INFO), message, extra=extra or {})

    def stage(self, action: str, **extra: Any) -> AbstractContextManager[Dict[str, Any]]:
        """Etapa cronometrada (ver :func:`topology.logger.timed_stage`)."""
        return timed_stage(self.logger, action, **extra)

    @staticmethod
    def status(message: str, ok: bool = True) -> None:
        """Linha de status para humanos em stderr: ``[OK]`` verde ou ``[ERRO]`` vermelho."""
        tag = f"{Fore.GREEN}[OK]" if ok else f"{Fore.RED}[ERRO]"
        print(f"{tag}{Style.RESET_ALL} {message}", file=sys.stderr)
