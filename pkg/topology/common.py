"""Excecoes e utilitarios compartilhados entre os modulos de topologia."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Iterable, List, Optional


@dataclass
class TopologyError(Exception):
    """Excecao base para erros de malha, campo, grafo ou realizacao."""

    message: str
    location: Optional[Any] = None

    def __str__(self) -> str:  # pragma: no cover - simples representacao
        if self.location is None:
            return self.message
        return f"{self.message} (local: {self.location})"

    def to_dict(self) -> dict[str, Any]:
        """Representacao serializavel usada nos relatorios JSON."""
        location = self.location
        if isinstance(location, (set, frozenset)):
            location = sorted(location)
        elif isinstance(location, tuple):
            location = list(location)
        return {"kind": type(self).__name__, "message": self.message, "location": location}


class MeshError(TopologyError):
    """Violacao das invariantes de uma superficie simplicial."""

    pass


class NonManifoldEdge(MeshError):
    """Aresta contida em tres ou mais triangulos."""

    pass


class NonManifoldVertex(MeshError):
    """Vertice cujo link nao e um unico caminho ou um unico ciclo."""

    pass


class DegenerateTriangle(MeshError):
    """Triangulo com vertices repetidos."""

    pass


class DuplicateTriangle(MeshError):
    """Dois triangulos com o mesmo conjunto de vertices."""

    pass


class UnusedVertex(MeshError):
    """Identificador de vertice que nao aparece em nenhum triangulo."""

    pass


class DisconnectedMesh(MeshError):
    """Operacao que exige malha conexa recebeu mais de uma componente."""

    pass


class FormatError(TopologyError):
    """Falha ao interpretar um arquivo OFF, de campo ou JSON."""

    pass


class FieldMismatch(TopologyError):
    """Campo escalar incompativel com a malha (numero de valores)."""

    pass


class InvalidInterval(TopologyError):
    """Intervalo de niveis vazio ou invertido."""

    pass


class InvalidOption(TopologyError):
    """Parametro de construcao ou de amostragem fora do intervalo aceito."""

    pass


class NeighborhoodNotFound(TopologyError):
    """Nenhuma componente do intervalo em torno do nivel contem as celulas dadas."""

    pass


class InvalidSignature(TopologyError):
    """Assinatura de superficie inconsistente."""

    pass


class InvalidReebGraph(TopologyError):
    """Grafo de Reeb que viola as invariantes de arestas."""

    pass


class DecorationError(TopologyError):
    """Violacao das invariantes de um grafo decorado."""

    pass


class LoopEdge(DecorationError):
    """Aresta com as duas pontas no mesmo vertice."""

    pass


class CobMismatch(DecorationError):
    """Numero de bordos de gamma(v) diferente do grau de v."""

    pass


class IsolatedVertexWithBoundary(DecorationError):
    """Vertice de grau zero com superficie de bordo nao vazio."""

    pass


class UnknownVertex(DecorationError):
    """Aresta que referencia um vertice inexistente."""

    pass


class DuplicateId(DecorationError):
    """Identificador de vertice ou aresta repetido."""

    pass


class HeightError(TopologyError):
    """Alturas fornecidas pelo usuario invalidas."""

    pass


class NonInjectiveHeights(HeightError):
    """Dois vertices com a mesma altura."""

    pass


class MissingHeights(HeightError):
    """Alturas fornecidas apenas para parte dos vertices."""

    pass


class GenusTooSmall(TopologyError):
    """Genero alvo menor que o exigido pelo primeiro numero de Betti."""

    pass


class DisconnectedGraph(TopologyError):
    """Grafo desconexo onde se exige grafo conexo."""

    pass


class VerificationFailed(TopologyError):
    """Uma das clausulas de verificacao da realizacao falhou."""

    pass


def raise_first(violations: Iterable[TopologyError]) -> None:
    """Levanta a primeira violacao da lista, se a lista nao estiver vazia."""
    items: List[TopologyError] = list(violations)
    if items:
        raise items[0]
