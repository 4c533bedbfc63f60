"""Grafo de Reeb de campos PL: varredura por niveis, contracao e oraculo amostrado.

A varredura amostra cada valor distinto de vertice e os pontos intermediarios
entre valores consecutivos. Cada componente de nivel amostrada vira um no;
componentes de faixas entre amostras consecutivas ligam os nos. Nos regulares
(um vizinho abaixo, um acima, ligados por colares anulares) sao contraidos e
os restantes sao os nos criticos do grafo.
"""

from __future__ import annotations

import json
import logging
from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from itertools import pairwise
from typing import Any, Dict, FrozenSet, List, Optional, Protocol, Sequence, Tuple

from networkx.utils import UnionFind
from pydantic import BaseModel, ValidationError

from .common import FormatError, InvalidOption, InvalidReebGraph
from .field import ScalarField, format_rational, parse_rational
from .graphs import GraphSkeleton
from .levels import (
    Cell,
    LevelComponent,
    SlicedSurface,
    extract_region,
    interval_components,
    level_components,
    node_neighborhood,
    piece_signature,
    slice_surface,
)
from .mesh import ANNULUS, DISK, Edge, SimplicialSurface, SurfaceSignature, validate_surface

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ReebNode:
    id: int
    level: Fraction
    critical: bool = True
    cells: FrozenSet[Cell] = field(default=frozenset(), compare=False, repr=False)


@dataclass(frozen=True)
class ReebEdge:
    id: int
    ends: Tuple[int, int]
    interval: Tuple[Fraction, Fraction]
    cells: FrozenSet[Cell] = field(default=frozenset(), compare=False, repr=False)


class _NodeRecord(BaseModel):
    id: int
    level: str
    critical: bool = True


class _EdgeRecord(BaseModel):
    id: int
    ends: Tuple[int, int]
    interval: Tuple[str, str]


class _GraphRecord(BaseModel):
    nodes: List[_NodeRecord]
    edges: List[_EdgeRecord]


@dataclass(frozen=True)
class ReebGraph:
    """Grafo de Reeb com niveis exatos e proveniencia opcional em celulas da malha.

    Raises
    ------
    InvalidReebGraph
        Na construcao, se houver laco, ids repetidos ou intervalo de aresta
        diferente dos niveis das pontas.
    """

    nodes: Tuple[ReebNode, ...]
    edges: Tuple[ReebEdge, ...]

    def __post_init__(self) -> None:
        levels = {node.id: node.level for node in self.nodes}
        if len(levels) != len(self.nodes):
            raise InvalidReebGraph("Ids de nos repetidos")
        for edge in self.edges:
            a, b = edge.ends
            if a == b:
                raise InvalidReebGraph("Aresta em laco", location=edge.id)
            if a not in levels or b not in levels:
                raise InvalidReebGraph("Aresta com ponta inexistente", location=edge.id)
            lo, hi = edge.interval
            if not lo < hi or {lo, hi} != {levels[a], levels[b]}:
                raise InvalidReebGraph(
                    "Intervalo da aresta difere dos niveis das pontas", location=edge.id
                )

    def node(self, node_id: int) -> ReebNode:
        for node in self.nodes:
            if node.id == node_id:
                return node
        raise KeyError(node_id)

    def skeleton(self) -> GraphSkeleton:
        return GraphSkeleton(
            tuple(node.id for node in self.nodes),
            tuple(edge.ends for edge in self.edges),
            {node.id: node.level for node in self.nodes},
        )

    def to_dict(self) -> Dict[str, Any]:
        return {
            "nodes": [
                {"id": n.id, "level": format_rational(n.level), "critical": n.critical}
                for n in self.nodes
            ],
            "edges": [
                {
                    "id": e.id,
                    "ends": list(e.ends),
                    "interval": [format_rational(e.interval[0]), format_rational(e.interval[1])],
                }
                for e in self.edges
            ],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2) + "\n"

    def to_dot(self) -> str:
        """Forma DOT para leitura humana; arestas paralelas sao repetidas."""
        lines = ["graph reeb {"]
        for n in self.nodes:
            lines.append(f'  n{n.id} [label="{n.id}@{format_rational(n.level)}"];')
        for e in self.edges:
            lines.append(f'  n{e.ends[0]} -- n{e.ends[1]} [label="e{e.id}"];')
        lines.append("}")
        return "\n".join(lines) + "\n"

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "ReebGraph":
        """Le a forma JSON de :meth:`to_dict` (sem proveniencia)."""
        try:
            record = _GraphRecord.model_validate(data)
        except ValidationError as exc:
            raise FormatError(f"JSON de grafo de Reeb invalido: {exc.errors()[0]['msg']}") from exc
        nodes = tuple(ReebNode(n.id, parse_rational(n.level), n.critical) for n in record.nodes)
        edges = tuple(
            ReebEdge(
                e.id,
                (e.ends[0], e.ends[1]),
                (parse_rational(e.interval[0]), parse_rational(e.interval[1])),
            )
            for e in record.edges
        )
        return cls(nodes, edges)


class _SlabPiece(Protocol):
    lower: Tuple[int, ...]
    upper: Tuple[int, ...]

    @property
    def signature(self) -> Optional[SurfaceSignature]: ...


@dataclass
class _SlabComponent:
    """Componente de uma faixa entre duas amostras no refinamento global."""

    lower: Tuple[int, ...]
    upper: Tuple[int, ...]
    sliced: SlicedSurface = field(repr=False)
    vertices: List[int] = field(default_factory=list, repr=False)
    edges: List[Edge] = field(default_factory=list, repr=False)
    triangles: List[int] = field(default_factory=list, repr=False)

    @cached_property
    def signature(self) -> Optional[SurfaceSignature]:
        region, pure = extract_region(self.sliced, self.vertices, self.edges, self.triangles)
        return piece_signature(region) if pure else None


NodeKey = Tuple[int, int]


def sample_levels(values: Sequence[Fraction], per_gap: int) -> List[Fraction]:
    """Valores de vertice mais ``per_gap`` amostras igualmente espacadas em cada intervalo."""
    samples: List[Fraction] = []
    for lo, hi in pairwise(values):
        samples.append(lo)
        step = (hi - lo) / (per_gap + 1)
        samples.extend(lo + step * r for r in range(1, per_gap + 1))
    if values:
        samples.append(values[-1])
    return samples


def _accepted_collars(mesh: SimplicialSurface) -> Tuple[SurfaceSignature, ...]:
    return (ANNULUS, DISK) if mesh.has_boundary else (ANNULUS,)


def _assemble(
    levels: Sequence[Fraction],
    vertex_values: set[Fraction],
    components: Sequence[Sequence[LevelComponent]],
    slabs: Sequence[Sequence[_SlabPiece]],
    accepted: Tuple[SurfaceSignature, ...],
) -> ReebGraph:
    up: Dict[NodeKey, List[Tuple[NodeKey, int]]] = defaultdict(list)
    down: Dict[NodeKey, List[Tuple[NodeKey, int]]] = defaultdict(list)
    for j, pieces in enumerate(slabs):
        for s, piece in enumerate(pieces):
            for lo_index in piece.lower:
                for hi_index in piece.upper:
                    up[(j, lo_index)].append(((j + 1, hi_index), s))
                    down[(j + 1, hi_index)].append(((j, lo_index), s))

    def is_collar(key: NodeKey) -> bool:
        if len(up[key]) != 1 or len(down[key]) != 1:
            return False
        j = key[0]
        pieces = (slabs[j][up[key][0][1]], slabs[j - 1][down[key][0][1]])
        return all(
            len(piece.lower) == 1 and len(piece.upper) == 1 and piece.signature in accepted
            for piece in pieces
        )

    regular: set[NodeKey] = set()
    for j, comps in enumerate(components):
        for comp in comps:
            key = (j, comp.index)
            if levels[j] in vertex_values:
                if is_collar(key):
                    regular.add(key)
                continue
            assert len(up[key]) == 1 and len(down[key]) == 1, f"amostra regular {key} sem colar"
            regular.add(key)

    def component(key: NodeKey) -> LevelComponent:
        return components[key[0]][key[1]]

    critical = sorted(
        (
            (j, comp.index)
            for j, comps in enumerate(components)
            for comp in comps
            if (j, comp.index) not in regular
        ),
        key=lambda k: (levels[k[0]], component(k).min_cell),
    )
    ids = {key: i for i, key in enumerate(critical)}
    nodes = tuple(ReebNode(ids[k], levels[k[0]], True, component(k).cells) for k in critical)

    raw: List[Tuple[Tuple[int, int], FrozenSet[Cell]]] = []
    for key in critical:
        for nxt, _ in up[key]:
            chain = [levels[key[0]]]
            cells: set[Cell] = set()
            while nxt in regular:
                cells |= component(nxt).cells
                chain.append(levels[nxt[0]])
                ((nxt, _),) = up[nxt]
            chain.append(levels[nxt[0]])
            assert all(a < b for a, b in pairwise(chain)), "cadeia contraida nao monotona"
            raw.append(((ids[key], ids[nxt]), frozenset(cells)))
    raw.sort(key=lambda item: (item[0], min(item[1], default=())))
    edges = tuple(
        ReebEdge(i, ends, (nodes[ends[0]].level, nodes[ends[1]].level), cells)
        for i, (ends, cells) in enumerate(raw)
    )
    return ReebGraph(nodes, edges)


def _slab_components(
    sliced: SlicedSurface,
    samples: Sequence[Fraction],
    components: Sequence[Sequence[LevelComponent]],
) -> List[List[_SlabComponent]]:
    refined = sliced.mesh
    position = {level: j for j, level in enumerate(samples)}
    owners = [{cell: c.index for c in comps for cell in c.cells} for comps in components]
    sample_of = [position[value] for value in sliced.field]
    level_of = [owners[sample_of[v]][sliced.carriers[v]] for v in range(refined.vertex_count)]

    def slabs_for(indices: set[int]) -> List[int]:
        low = min(indices)
        if len(indices) == 1:
            return [j for j in (low - 1, low) if 0 <= j < len(samples) - 1]
        return [low]

    slab_vertices: Dict[int, List[int]] = defaultdict(list)
    for vertex, j in enumerate(sample_of):
        for slab in (j - 1, j):
            if 0 <= slab < len(samples) - 1:
                slab_vertices[slab].append(vertex)
    slab_edges: Dict[int, List[Edge]] = defaultdict(list)
    for a, b in refined.edges:
        for slab in slabs_for({sample_of[a], sample_of[b]}):
            slab_edges[slab].append((a, b))
    slab_triangles: Dict[int, List[int]] = defaultdict(list)
    for index, triangle in enumerate(refined.triangles):
        for slab in slabs_for({sample_of[v] for v in triangle}):
            slab_triangles[slab].append(index)

    result: List[List[_SlabComponent]] = []
    for j in range(len(samples) - 1):
        forest: UnionFind = UnionFind(slab_vertices[j])
        for a, b in slab_edges[j]:
            forest.union(a, b)
        groups = sorted((sorted(g) for g in forest.to_sets()), key=lambda g: g[0])
        pieces: List[_SlabComponent] = []
        root_index: Dict[int, int] = {}
        for g in groups:
            lower = tuple(sorted({level_of[v] for v in g if sample_of[v] == j}))
            upper = tuple(sorted({level_of[v] for v in g if sample_of[v] == j + 1}))
            root_index[forest[g[0]]] = len(pieces)
            pieces.append(_SlabComponent(lower, upper, sliced, list(g)))
        for a, b in slab_edges[j]:
            pieces[root_index[forest[a]]].edges.append((a, b))
        for index in slab_triangles[j]:
            pieces[root_index[forest[refined.triangles[index][0]]]].triangles.append(index)
        result.append(pieces)
    return result


def compute_reeb_graph(mesh: SimplicialSurface, field_: ScalarField) -> ReebGraph:
    """Calcula o grafo de Reeb do campo PL sobre a malha.

    Parameters
    ----------
    mesh : SimplicialSurface
        Malha valida, fechada ou com bordo (possivelmente desconexa).
    field_ : ScalarField
        Valores racionais exatos por vertice.

    Returns
    -------
    ReebGraph
        Nos criticos ordenados por (nivel, menor celula) e arestas com o
        intervalo de niveis da cadeia contraida.

    Raises
    ------
    MeshError
        Primeira violacao de :func:`validate_surface`.
    FieldMismatch
        Campo com numero de valores diferente do numero de vertices.
    """
    validate_surface(mesh).raise_for_violations()
    field_.check_against(mesh.vertex_count)
    values = field_.distinct_values()
    samples = sample_levels(values, 1)
    components = [level_components(mesh, field_, s) for s in samples]
    sliced = slice_surface(mesh, field_, samples)
    slabs = _slab_components(sliced, samples, components)
    graph = _assemble(samples, set(values), components, slabs, _accepted_collars(mesh))
    logger.info(
        "Grafo de Reeb: %d nos, %d arestas (%d amostras)",
        len(graph.nodes),
        len(graph.edges),
        len(samples),
    )
    return graph


def sampled_reeb_oracle(
    mesh: SimplicialSurface, field_: ScalarField, extra_samples: int
) -> ReebGraph:
    """Oraculo independente: ``extra_samples`` amostras por intervalo e cortes locais.

    Cada faixa entre amostras consecutivas e resolvida por
    :func:`interval_components`, sem o refinamento global usado em
    :func:`compute_reeb_graph`.

    Raises
    ------
    InvalidOption
        Se ``extra_samples < 1``.
    """
    if extra_samples < 1:
        raise InvalidOption("extra_samples deve ser pelo menos 1", location=extra_samples)
    validate_surface(mesh).raise_for_violations()
    field_.check_against(mesh.vertex_count)
    values = field_.distinct_values()
    samples = sample_levels(values, extra_samples)
    components = [level_components(mesh, field_, s) for s in samples]
    slabs = [interval_components(mesh, field_, a, b) for a, b in pairwise(samples)]
    graph = _assemble(samples, set(values), components, slabs, _accepted_collars(mesh))
    logger.debug("Oraculo com %d amostras por intervalo: %d nos", extra_samples, len(graph.nodes))
    return graph


def critical_neighborhoods(
    mesh: SimplicialSurface, field_: ScalarField, graph: ReebGraph
) -> Dict[int, Optional[SurfaceSignature]]:
    """Assinatura da vizinhanca regular de cada no critico (exige proveniencia)."""
    result: Dict[int, Optional[SurfaceSignature]] = {}
    for node in graph.nodes:
        if node.critical:
            result[node.id] = node_neighborhood(mesh, field_, node.level, node.cells).signature
    return result
