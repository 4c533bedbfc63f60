"""Realizacao de grafos decorados como grafos de Reeb e verificacao de ida e volta.

Cada vertice vira um bloco com campo constante na sua altura; cada aresta
vira um tubo com aneis de valores estritamente crescentes, costurado por
faixas a um ciclo livre do bloco de baixo e a um do bloco de cima.
"""

from __future__ import annotations

import json
import logging
from collections import Counter, deque
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Any, Deque, Dict, FrozenSet, List, Optional, Tuple

import networkx as nx
from pydantic import BaseModel, Field

from .common import (
    DisconnectedGraph,
    GenusTooSmall,
    LoopEdge,
    NeighborhoodNotFound,
    VerificationFailed,
)
from .config import RealizeOptions
from .construct import SurfaceBuilder, build_vertex_block, tube_ring_values, tube_triangles
from .decorated import (
    DecoratedEdge,
    DecoratedGraph,
    DecoratedVertex,
    assign_heights,
    expected_orientable,
    oriented_edges,
    require_valid,
)
from .field import Rational, ScalarField
from .graphs import GraphLike, as_skeleton, betti1, graph_isomorphic
from .levels import Cell, is_simple_cycle, level_components, level_graph, node_neighborhood
from .logger import timed_stage
from .mesh import SimplicialSurface, orientability
from .reeb import compute_reeb_graph, sampled_reeb_oracle

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class RealizationOutput:
    """Malha e campo sintetizados com a correspondencia grafo -> triangulos.

    ``blocks`` e ``tubes`` particionam os indices de triangulos; as faixas de
    costura pertencem ao tubo. ``rings`` guarda os vertices de cada anel.
    """

    mesh: SimplicialSurface
    field: ScalarField
    heights: Dict[str, int]
    blocks: Dict[str, Tuple[int, ...]]
    tubes: Dict[str, Tuple[int, ...]]
    rings: Dict[str, Tuple[Tuple[int, ...], ...]]
    decoration: DecoratedGraph = field(repr=False)
    options: RealizeOptions = field(default_factory=RealizeOptions)

    def _cells(self, triangles: Tuple[int, ...]) -> FrozenSet[Cell]:
        return frozenset(tuple(sorted(self.mesh.triangles[i])) for i in triangles)

    def block_cells(self, vertex_id: str) -> FrozenSet[Cell]:
        return self._cells(self.blocks[vertex_id])

    def tube_cells(self, edge_id: str) -> FrozenSet[Cell]:
        return self._cells(self.tubes[edge_id])

    def with_field(self, field_: ScalarField) -> "RealizationOutput":
        field_.check_against(self.mesh.vertex_count)
        return replace(self, field=field_)

    def correspondence(self) -> Dict[str, Any]:
        return {
            "vertices": {vid: list(tris) for vid, tris in self.blocks.items()},
            "edges": {eid: list(tris) for eid, tris in self.tubes.items()},
            "heights": dict(self.heights),
        }

    def correspondence_json(self) -> str:
        return json.dumps(self.correspondence(), indent=2) + "\n"


def realize(graph: DecoratedGraph, options: Optional[RealizeOptions] = None) -> RealizationOutput:
    """Sintetiza malha fechada e campo PL exato cujo grafo de Reeb e o grafo dado.

    Raises
    ------
    DecorationError
        Primeira violacao de :func:`validate_decoration`.
    HeightError
        Alturas do usuario incompletas ou repetidas.
    """
    options = options or RealizeOptions()
    require_valid(graph)
    heights = assign_heights(graph)

    with timed_stage(
        logger, "realize", vertices=len(graph.vertices), edges=len(graph.edges)
    ) as stage:
        builder = SurfaceBuilder()
        values: List[Fraction] = []
        blocks: Dict[str, Tuple[int, ...]] = {}
        free_cycles: Dict[str, Deque[Tuple[int, ...]]] = {}
        for vertex in graph.vertices:
            block = build_vertex_block(graph.gamma(vertex.id), options.p)
            offset, triangles = builder.add(block.mesh)
            values.extend([Fraction(heights[vertex.id])] * block.mesh.vertex_count)
            blocks[vertex.id] = tuple(triangles)
            free_cycles[vertex.id] = deque(
                tuple(offset + v for v in cycle) for cycle in block.cycles
            )

        tubes: Dict[str, Tuple[int, ...]] = {}
        rings: Dict[str, Tuple[Tuple[int, ...], ...]] = {}
        for edge, low, high in oriented_edges(graph, heights):
            ring_values = tube_ring_values(heights[low], heights[high], options.rings)
            ring_ids = [builder.fresh(options.p) for _ in ring_values]
            for value in ring_values:
                values.extend([value] * options.p)
            top_ring = ring_ids[-1] if edge.twisted else list(reversed(ring_ids[-1]))
            triangles = [
                *builder.zip(free_cycles[low].popleft(), ring_ids[0]),
                *builder.extend(tube_triangles(ring_ids)),
                *builder.zip(free_cycles[high].popleft(), top_ring),
            ]
            tubes[edge.id] = tuple(triangles)
            rings[edge.id] = tuple(tuple(ring) for ring in ring_ids)

        mesh = builder.build()
        stage["triangles"] = len(mesh.triangles)

    return RealizationOutput(
        mesh, ScalarField(tuple(values)), heights, blocks, tubes, rings, graph, options
    )


class VerificationReport(BaseModel):
    """Clausulas da realizacao: grafo de Reeb, fibras, vizinhancas e orientacao."""

    reeb_graph: bool
    fibers: bool
    neighborhoods: bool
    orientation: bool
    oracle: bool
    failures: List[str] = Field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(
            (self.reeb_graph, self.fibers, self.neighborhoods, self.orientation, self.oracle)
        )

    def raise_for_failure(self) -> None:
        if not self.ok:
            raise VerificationFailed("Verificacao da realizacao falhou", location=self.failures)

    def to_dict(self) -> Dict[str, Any]:
        return {"ok": self.ok, **self.model_dump()}


def _fiber_is_circle(out: RealizationOutput, edge: DecoratedEdge) -> bool:
    ring = out.rings[edge.id][out.options.middle_ring]
    level = out.field[ring[0]]
    tube = out.tube_cells(edge.id)
    meeting = [c for c in level_components(out.mesh, out.field, level) if c.cells & tube]
    return len(meeting) == 1 and is_simple_cycle(level_graph(out.mesh, out.field, meeting[0]))


def _block_neighborhood_matches(
    graph: DecoratedGraph, out: RealizationOutput, vertex_id: str, delta: Optional[Rational]
) -> bool:
    try:
        piece = node_neighborhood(
            out.mesh, out.field, out.heights[vertex_id], out.block_cells(vertex_id), delta
        )
    except NeighborhoodNotFound as exc:
        logger.debug("Bloco %s fora do intervalo: %s", vertex_id, exc)
        return False
    return piece.signature == graph.gamma(vertex_id)


def verify_realization(
    graph: DecoratedGraph,
    out: RealizationOutput,
    oracle_samples: int = 2,
    delta: Optional[Rational] = None,
) -> VerificationReport:
    """Confere a realizacao contra o grafo decorado.

    1. O grafo de Reeb calculado e isomorfo ao esqueleto reduzido, com
       testemunha que leva cada no a um vertice de mesma altura.
    2. No anel do meio de cada tubo ha uma unica componente de nivel no
       tubo, e ela e um ciclo simples.
    3. A vizinhanca regular de cada bloco tem a assinatura decorada. Um
       bloco que nao encontra o intervalo em torno da sua altura falha aqui.

    Alem disso a malha deve ser orientavel exatamente quando
    :func:`expected_orientable` diz que sim, e o oraculo amostrado com
    ``oracle_samples`` amostras por intervalo deve concordar com o grafo
    calculado. ``delta`` fixa a meia largura do intervalo da clausula 3; por
    padrao ela vem de :func:`neighborhood_radius`.
    """
    failures: List[str] = []
    with timed_stage(logger, "verify", vertices=len(graph.vertices), edges=len(graph.edges)):
        reeb = compute_reeb_graph(out.mesh, out.field)
        reduced = graph.reduced_skeleton(out.heights)
        match = graph_isomorphic(reeb.skeleton(), reduced, respect_levels=True)
        levels = reduced.levels or {}
        witness = match.witness or {}
        reeb_ok = match.isomorphic and all(
            reeb.node(node).level == levels[vertex] for node, vertex in witness.items()
        )
        if not reeb_ok:
            failures.append(
                f"grafo de Reeb com {len(reeb.nodes)} nos e {len(reeb.edges)} arestas nao "
                f"corresponde ao esqueleto ({len(reduced.nodes)} nos, {len(reduced.edges)} arestas)"
            )

        bad_fibers = [e.id for e in graph.edges if not _fiber_is_circle(out, e)]
        failures.extend(f"fibra da aresta {eid} nao e um circulo" for eid in bad_fibers)

        bad_blocks = [
            v.id for v in graph.vertices if not _block_neighborhood_matches(graph, out, v.id, delta)
        ]
        failures.extend(f"vizinhanca de {vid} difere da decoracao" for vid in bad_blocks)

        orientable = orientability(out.mesh).orientable
        orientation_ok = orientable == expected_orientable(graph)
        if not orientation_ok:
            failures.append(
                f"malha {'orientavel' if orientable else 'nao orientavel'} contraria a decoracao"
            )

        oracle = sampled_reeb_oracle(out.mesh, out.field, oracle_samples)
        oracle_ok = graph_isomorphic(reeb, oracle, respect_levels=True).isomorphic
        if not oracle_ok:
            failures.append("oraculo amostrado discorda do grafo calculado")

    report = VerificationReport(
        reeb_graph=reeb_ok,
        fibers=not bad_fibers,
        neighborhoods=not bad_blocks,
        orientation=orientation_ok,
        oracle=oracle_ok,
        failures=failures,
    )
    if not report.ok:
        logger.warning("Verificacao falhou: %s", "; ".join(failures))
    return report


def _first_cycle_edge(edges: Tuple[Tuple[Any, Any], ...]) -> int:
    simple = nx.Graph()
    simple.add_edges_from(edges)
    bridges = {frozenset(b) for b in nx.bridges(simple)}
    multiplicity = Counter(frozenset(e) for e in edges)
    for index, edge in enumerate(edges):
        key = frozenset(edge)
        if multiplicity[key] > 1 or key not in bridges:
            return index
    raise ValueError("Grafo sem ciclos")


def _smallest_id(nodes: Tuple[Any, ...]) -> Any:
    try:
        return min(nodes)
    except TypeError:
        return min(nodes, key=str)


def decorate_on_surface(graph: GraphLike, genus: int, orientable: bool = True) -> DecoratedGraph:
    """Decoracao de um multigrafo conexo cuja realizacao tem o genero pedido.

    Todos os vertices sao planares, exceto o de menor id, que absorve as
    alcas (ou crosscaps) excedentes; ids de tipos misturados sao comparados
    como texto. Em alvos nao orientaveis com exatamente ``2 * betti1``
    crosscaps, a primeira aresta fora de ponte e torcida.

    Raises
    ------
    LoopEdge
        Se houver laco.
    DisconnectedGraph
        Se o grafo for vazio ou desconexo.
    GenusTooSmall
        Se ``genus < betti1`` (orientavel) ou ``genus < max(1, 2 * betti1)``.
    """
    skeleton = as_skeleton(graph)
    if not skeleton.nodes:
        raise DisconnectedGraph("Grafo vazio")
    for index, (u, w) in enumerate(skeleton.edges):
        if u == w:
            raise LoopEdge("Aresta em laco", location=index)
    if not nx.is_connected(skeleton.to_networkx()):
        raise DisconnectedGraph(
            "Grafo desconexo", location=nx.number_connected_components(skeleton.to_networkx())
        )

    cycles = betti1(skeleton)
    designated = _smallest_id(skeleton.nodes)
    twisted: Optional[int] = None
    if orientable:
        if genus < cycles:
            raise GenusTooSmall(
                f"Genero {genus} menor que betti1 = {cycles}", location=(genus, cycles)
            )
        surplus = genus - cycles
    else:
        needed = max(1, 2 * cycles)
        if genus < needed:
            raise GenusTooSmall(
                f"{genus} crosscaps, minimo {needed} para betti1 = {cycles}",
                location=(genus, needed),
            )
        surplus = genus - 2 * cycles
        if surplus == 0:
            twisted = _first_cycle_edge(skeleton.edges)

    vertices = []
    for node in skeleton.nodes:
        extra = surplus if node == designated else 0
        vertices.append(
            DecoratedVertex(id=str(node), orientable=orientable or extra == 0, genus=extra)
        )
    edges = [
        DecoratedEdge(id=f"e{index}", ends=(str(u), str(w)), twisted=index == twisted)
        for index, (u, w) in enumerate(skeleton.edges)
    ]
    return DecoratedGraph(vertices=vertices, edges=edges)


def realize_on_surface(
    graph: GraphLike, genus: int, p: int = 6, rings: int = 2, orientable: bool = True
) -> RealizationOutput:
    """Realiza o multigrafo numa superficie fechada de genero (ou crosscaps) dado."""
    decoration = decorate_on_surface(graph, genus, orientable)
    logger.info(
        "Realizacao em superficie %s de genero %d",
        "orientavel" if orientable else "nao orientavel",
        genus,
    )
    return realize(decoration, RealizeOptions(p=p, rings=rings))
