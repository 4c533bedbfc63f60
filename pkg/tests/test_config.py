"""Testes para os modulos topology.config e topology.script."""

import logging
from pathlib import Path

import pytest
from dotenv import load_dotenv
from pydantic import ValidationError

from topology.config import LoggingSettings, RealizeOptions, SweepOptions, load_logging_settings
from topology.script import PipelineScript


class TestOptions:
    """Testes para os modelos de opcoes."""

    def test_defaults(self) -> None:
        """Testa valores padrao."""
        options = RealizeOptions()
        assert (options.p, options.rings, options.middle_ring) == (6, 2, 1)
        assert SweepOptions().extra_samples == 2

    def test_middle_ring(self) -> None:
        """Testa o indice do anel do meio."""
        assert RealizeOptions(rings=3).middle_ring == 1
        assert RealizeOptions(rings=5).middle_ring == 2

    @pytest.mark.parametrize("kwargs", [{"p": 2}, {"rings": 1}])
    def test_invalid_realize(self, kwargs: dict) -> None:
        """Testa poligonos e aneis abaixo do minimo."""
        with pytest.raises(ValidationError):
            RealizeOptions(**kwargs)

    def test_invalid_sweep(self) -> None:
        """Testa zero amostras."""
        with pytest.raises(ValidationError):
            SweepOptions(extra_samples=0)


class TestLoggingSettings:
    """Testes para LoggingSettings e load_logging_settings."""

    def test_level_is_uppercased(self) -> None:
        """Testa normalizacao do nivel."""
        assert LoggingSettings(level="debug").level == "DEBUG"

    def test_unknown_level(self) -> None:
        """Testa nivel desconhecido."""
        with pytest.raises(ValidationError):
            LoggingSettings(level="LOUD")

    def test_defaults(self, clean_log_env: None) -> None:
        """Testa ambiente sem variaveis de log."""
        settings = load_logging_settings()
        assert (settings.level, settings.log_file) == ("WARNING", None)

    def test_from_environment(self, clean_log_env: None, monkeypatch: pytest.MonkeyPatch) -> None:
        """Testa LOG_LEVEL e LOG_FILE vindos do ambiente."""
        monkeypatch.setenv("LOG_LEVEL", "info")
        monkeypatch.setenv("LOG_FILE", "logs/reebkit.log")
        settings = load_logging_settings()
        assert (settings.level, settings.log_file) == ("INFO", "logs/reebkit.log")

    def test_from_dotenv(
        self, clean_log_env: None, monkeypatch: pytest.MonkeyPatch, tmp_path: Path
    ) -> None:
        """Testa leitura de um arquivo .env."""
        env_file = tmp_path / ".env"
        env_file.write_text("LOG_LEVEL=ERROR\nLOG_FILE=\n", encoding="utf-8")
        monkeypatch.setattr("topology.config.load_dotenv", lambda: load_dotenv(env_file))
        settings = load_logging_settings()
        assert (settings.level, settings.log_file) == ("ERROR", None)


class TestPipelineScript:
    """Testes para o contexto PipelineScript."""

    def test_override_level(self, clean_log_env: None, monkeypatch: pytest.MonkeyPatch) -> None:
        """Testa que o nivel da linha de comando prevalece sobre o ambiente."""
        monkeypatch.setenv("LOG_LEVEL", "ERROR")
        with PipelineScript("info", log_level="debug") as ctx:
            assert ctx.settings is not None
            assert ctx.settings.level == "DEBUG"
            assert ctx.logger.level == logging.DEBUG
            assert logging.getLogger("topology").level == logging.DEBUG

    def test_invalid_env_level(
        self,
        clean_log_env: None,
        monkeypatch: pytest.MonkeyPatch,
        capsys: pytest.CaptureFixture[str],
    ) -> None:
        """Testa LOG_LEVEL invalido: aviso e nivel padrao."""
        monkeypatch.setenv("LOG_LEVEL", "LOUD")
        with PipelineScript("info") as ctx:
            assert ctx.settings is not None
            assert ctx.settings.level == "WARNING"
        assert "LOG_LEVEL invalido" in capsys.readouterr().err

    def test_error_is_logged(self, clean_log_env: None, caplog: pytest.LogCaptureFixture) -> None:
        """Testa registro de excecao ao sair do contexto."""
        with pytest.raises(RuntimeError):
            with PipelineScript("compute", log_level="INFO"):
                raise RuntimeError("falhou")
        actions = [getattr(r, "action", None) for r in caplog.records]
        assert "script_error" in actions
        assert actions[-1] == "script_end"

    def test_status(self, capsys: pytest.CaptureFixture[str]) -> None:
        """Testa linhas de status em stderr."""
        PipelineScript.status("tudo certo")
        PipelineScript.status("deu errado", ok=False)
        err = capsys.readouterr().err
        assert "[OK]" in err and "tudo certo" in err
        assert "[ERRO]" in err and "deu errado" in err
