"""Configuracoes e fixtures para testes do reebkit."""

import json
from pathlib import Path
from typing import Any, Callable, Dict, Generator, List, Tuple

import pytest

from topology.decorated import DecoratedGraph
from topology.field import ScalarField
from topology.formats import write_field, write_off
from topology.mesh import SimplicialSurface
from topology.shapes import coordinate_field, octahedron, standing_torus

FIXTURES_DIR = Path(__file__).resolve().parent.parent / "fixtures"


def pytest_addoption(parser: pytest.Parser) -> None:
    parser.addoption(
        "--runslow",
        action="store_true",
        default=False,
        help="Executa tambem os testes marcados como slow",
    )


def pytest_configure(config: pytest.Config) -> None:
    config.addinivalue_line("markers", "slow: corpus exaustivo, executado apenas com --runslow")


def pytest_collection_modifyitems(config: pytest.Config, items: List[pytest.Item]) -> None:
    if config.getoption("--runslow"):
        return
    skip_slow = pytest.mark.skip(reason="use --runslow para executar")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip_slow)


@pytest.fixture
def octa() -> SimplicialSurface:
    """Octaedro orientado para fora, com coordenadas."""
    return octahedron()


@pytest.fixture
def octa_height(octa: SimplicialSurface) -> ScalarField:
    """Terceira coordenada do octaedro: polos em -1 e 1, equador em 0."""
    return coordinate_field(octa)


@pytest.fixture
def torus_height() -> Tuple[SimplicialSurface, ScalarField]:
    """Toro em pe com campo de altura (minimo, duas selas, maximo)."""
    return standing_torus()


@pytest.fixture
def theta_data() -> Dict[str, Any]:
    """Grafo teta: dois vertices planares ligados por tres arestas."""
    return {
        "vertices": [{"id": "a"}, {"id": "b"}],
        "edges": [
            {"id": "e0", "ends": ["a", "b"]},
            {"id": "e1", "ends": ["a", "b"]},
            {"id": "e2", "ends": ["a", "b"]},
        ],
    }


@pytest.fixture
def theta(theta_data: Dict[str, Any]) -> DecoratedGraph:
    return DecoratedGraph.model_validate(theta_data)


@pytest.fixture
def two_disks() -> DecoratedGraph:
    """Uma aresta entre dois discos: a realizacao e uma esfera."""
    return DecoratedGraph.model_validate(
        {"vertices": [{"id": "lo"}, {"id": "hi"}], "edges": [{"id": "e", "ends": ["lo", "hi"]}]}
    )


@pytest.fixture
def theta_file(tmp_path: Path, theta_data: Dict[str, Any]) -> Path:
    path = tmp_path / "theta.json"
    path.write_text(json.dumps(theta_data), encoding="utf-8")
    return path


@pytest.fixture
def octa_files(
    tmp_path: Path, octa: SimplicialSurface, octa_height: ScalarField
) -> Tuple[Path, Path]:
    """Arquivos OFF e de campo do octaedro com o campo de altura."""
    mesh_path, field_path = tmp_path / "octahedron.off", tmp_path / "octahedron.field"
    write_off(octa, mesh_path)
    write_field(octa_height, field_path)
    return mesh_path, field_path


@pytest.fixture
def clean_log_env(monkeypatch: pytest.MonkeyPatch) -> Generator[None, None, None]:
    """Remove LOG_LEVEL e LOG_FILE do ambiente e ignora o .env durante o teste."""
    for name in ("LOG_LEVEL", "LOG_FILE"):
        monkeypatch.setenv(name, "")
        monkeypatch.delenv(name)
    monkeypatch.setattr("topology.config.load_dotenv", lambda: False)
    yield


@pytest.fixture
def fixture_path() -> Callable[[str], Path]:
    """Caminho de um arquivo versionado em ``fixtures/``."""
    return lambda name: FIXTURES_DIR / name
