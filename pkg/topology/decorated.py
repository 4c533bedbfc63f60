"""Grafos decorados: superficie por vertice, circulo por aresta e alturas.

O formato JSON e validado com pydantic::

    {"vertices": [{"id": "v0", "orientable": true, "genus": 0, "boundary": 3,
                   "height": 0}],
     "edges": [{"id": "e0", "ends": ["v0", "v1"], "twisted": false}]}

``boundary`` ausente vale o grau do vertice; ``height`` e opcional, mas se
for dada para um vertice deve ser dada para todos.
"""

from __future__ import annotations

import json
import logging
from collections import Counter, defaultdict
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Any, Dict, List, Optional, Tuple, Union

import networkx as nx
from pydantic import BaseModel, ConfigDict, Field

from .common import (
    CobMismatch,
    DuplicateId,
    FormatError,
    InvalidSignature,
    IsolatedVertexWithBoundary,
    LoopEdge,
    MissingHeights,
    NonInjectiveHeights,
    TopologyError,
    UnknownVertex,
    raise_first,
)
from .graphs import GraphSkeleton
from .mesh import SurfaceSignature

logger = logging.getLogger(__name__)


class DecoratedVertex(BaseModel):
    model_config = ConfigDict(frozen=True, extra="forbid")

    id: str
    orientable: bool = True
    genus: int = Field(default=0, ge=0)
    boundary: Optional[int] = Field(default=None, ge=0)
    height: Optional[int] = None


class DecoratedEdge(BaseModel):
    model_config = ConfigDict(frozen=True, extra="forbid")

    id: str
    ends: Tuple[str, str]
    twisted: bool = False


class DecoratedGraph(BaseModel):
    """Multigrafo decorado; a ordem das listas define a ordem canonica."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    vertices: List[DecoratedVertex]
    edges: List[DecoratedEdge] = Field(default_factory=list)

    @classmethod
    def from_json(cls, text: str) -> "DecoratedGraph":
        """Le o JSON do grafo decorado.

        Raises
        ------
        FormatError
            Se o texto nao for JSON.
        pydantic.ValidationError
            Se a estrutura nao corresponder ao esquema.
        """
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise FormatError(f"JSON invalido: {exc.msg}", location=exc.lineno) from exc
        return cls.model_validate(data)

    @classmethod
    def load(cls, path: Union[str, Path]) -> "DecoratedGraph":
        return cls.from_json(Path(path).read_text(encoding="utf-8"))

    def to_json(self) -> str:
        return self.model_dump_json(indent=2, exclude_none=True) + "\n"

    def vertex(self, vertex_id: str) -> DecoratedVertex:
        for vertex in self.vertices:
            if vertex.id == vertex_id:
                return vertex
        raise KeyError(vertex_id)

    def degree(self, vertex_id: str) -> int:
        return sum(edge.ends.count(vertex_id) for edge in self.incident_edges(vertex_id))

    def boundary_of(self, vertex_id: str) -> int:
        vertex = self.vertex(vertex_id)
        return self.degree(vertex_id) if vertex.boundary is None else vertex.boundary

    def gamma(self, vertex_id: str) -> SurfaceSignature:
        """Assinatura da superficie do vertice (bordo padrao = grau)."""
        vertex = self.vertex(vertex_id)
        return SurfaceSignature.build(vertex.orientable, vertex.genus, self.boundary_of(vertex_id))

    def incident_edges(self, vertex_id: str) -> List[DecoratedEdge]:
        return [edge for edge in self.edges if vertex_id in edge.ends]

    def skeleton(self, heights: Optional[Dict[str, int]] = None) -> GraphSkeleton:
        levels = None
        if heights is not None:
            levels = {vid: Fraction(h) for vid, h in heights.items()}
        return GraphSkeleton(
            tuple(v.id for v in self.vertices),
            tuple(edge.ends for edge in self.edges),
            levels,
        )

    def reduced_skeleton(self, heights: Dict[str, int]) -> GraphSkeleton:
        """Esqueleto sem os planaltos regulares.

        Um vertice anular com exatamente um vizinho abaixo e um acima e um
        nivel regular do campo realizado; ele e suavizado, juntando suas
        duas arestas numa so.
        """
        edges: List[Tuple[str, str]] = [edge.ends for edge in self.edges]
        kept: List[str] = []
        for vertex in self.vertices:
            vid = vertex.id
            touching = [e for e in edges if vid in e]
            if self.gamma(vid).is_annulus and len(touching) == 2:
                (u,) = [x for x in touching[0] if x != vid]
                (w,) = [x for x in touching[1] if x != vid]
                if (heights[u] - heights[vid]) * (heights[w] - heights[vid]) < 0:
                    edges = [e for e in edges if vid not in e] + [(u, w)]
                    continue
            kept.append(vid)
        levels = {vid: Fraction(heights[vid]) for vid in kept}
        return GraphSkeleton(tuple(kept), tuple(edges), levels)


@dataclass(frozen=True)
class DecorationReport:
    """Resultado de :func:`validate_decoration`."""

    violations: Tuple[TopologyError, ...] = ()

    @property
    def ok(self) -> bool:
        return not self.violations

    def raise_for_violations(self) -> None:
        raise_first(self.violations)

    def to_dict(self) -> Dict[str, Any]:
        return {"valid": self.ok, "violations": [v.to_dict() for v in self.violations]}


def validate_decoration(graph: DecoratedGraph) -> DecorationReport:
    """Verifica ids, lacos, a condicao de cobordismo e as assinaturas."""
    violations: List[TopologyError] = []
    for kind, ids in (
        ("vertice", [v.id for v in graph.vertices]),
        ("aresta", [e.id for e in graph.edges]),
    ):
        for duplicate, count in sorted(Counter(ids).items()):
            if count > 1:
                violations.append(DuplicateId(f"Id de {kind} repetido", location=duplicate))

    known = {v.id for v in graph.vertices}
    for edge in graph.edges:
        missing = [end for end in edge.ends if end not in known]
        if missing:
            violations.append(UnknownVertex("Aresta com vertice inexistente", location=edge.id))
        elif edge.ends[0] == edge.ends[1]:
            violations.append(LoopEdge("Aresta em laco", location=edge.id))

    for vertex in graph.vertices:
        degree = graph.degree(vertex.id)
        boundary = graph.boundary_of(vertex.id)
        if degree == 0 and boundary > 0:
            violations.append(
                IsolatedVertexWithBoundary("Vertice isolado com bordo", location=vertex.id)
            )
        elif boundary != degree:
            violations.append(
                CobMismatch(
                    f"Superficie com {boundary} bordos em vertice de grau {degree}",
                    location=vertex.id,
                )
            )
        try:
            graph.gamma(vertex.id)
        except InvalidSignature as exc:
            violations.append(InvalidSignature(exc.message, location=vertex.id))

    if violations:
        logger.debug("Decoracao invalida: %d violacoes", len(violations))
    return DecorationReport(tuple(violations))


def assign_heights(graph: DecoratedGraph) -> Dict[str, int]:
    """Alturas injetoras dos vertices: as do usuario ou 0, 1, 2, ... na ordem da lista.

    Raises
    ------
    MissingHeights
        Se apenas parte dos vertices tiver altura.
    NonInjectiveHeights
        Se dois vertices tiverem a mesma altura.
    """
    given = {v.id: v.height for v in graph.vertices if v.height is not None}
    if not given:
        return {v.id: index for index, v in enumerate(graph.vertices)}
    if len(given) != len(graph.vertices):
        missing = [v.id for v in graph.vertices if v.height is None]
        raise MissingHeights("Alturas ausentes", location=tuple(missing))
    by_height: Dict[int, List[str]] = defaultdict(list)
    for vid, height in given.items():
        by_height[height].append(vid)
    collisions = [ids for ids in by_height.values() if len(ids) > 1]
    if collisions:
        raise NonInjectiveHeights("Alturas repetidas", location=tuple(collisions[0]))
    return {vid: int(height) for vid, height in given.items()}


def oriented_edges(
    graph: DecoratedGraph, heights: Dict[str, int]
) -> List[Tuple[DecoratedEdge, str, str]]:
    """Cada aresta com suas pontas na ordem (mais baixa, mais alta)."""
    result = []
    for edge in graph.edges:
        u, w = edge.ends
        low, high = (u, w) if heights[u] < heights[w] else (w, u)
        result.append((edge, low, high))
    return result


def expected_orientable(graph: DecoratedGraph) -> bool:
    """Orientabilidade da realizacao: superficies orientaveis e paridade de torcoes par.

    Usa o recobrimento duplo do grafo: cada vertice vira ``(id, False)`` e
    ``(id, True)``, e uma aresta torcida troca o lado. Existe escolha coerente
    de sinais sse nenhum vertice tem os dois lados na mesma componente.
    """
    if not all(v.orientable for v in graph.vertices):
        return False
    cover = nx.Graph()
    for vertex in graph.vertices:
        cover.add_nodes_from([(vertex.id, False), (vertex.id, True)])
    for edge in graph.edges:
        u, w = edge.ends
        for side in (False, True):
            cover.add_edge((u, side), (w, side ^ edge.twisted))
    return not any(nx.has_path(cover, (v.id, False), (v.id, True)) for v in graph.vertices)


def require_valid(graph: DecoratedGraph) -> None:
    """Levanta a primeira violacao de :func:`validate_decoration`."""
    report = validate_decoration(graph)
    if not report.ok:
        logger.warning("Decoracao rejeitada: %s", report.violations[0])
    report.raise_for_violations()

