"""Conjuntos de nivel, pre-imagens de intervalos e cortes exatos de campos PL.

As componentes sao calculadas sobre os simplexos originais: um simplexo
encontra ``f^{-1}([a, b])`` quando ``min f <= b`` e ``max f >= a``. Como a
intersecao de um simplexo com a pre-imagem e convexa, unir cada triangulo as
faces que tambem encontram o intervalo da exatamente as componentes conexas.
Assinaturas de superficie exigem o corte exato da malha (:func:`slice_surface`).
"""

from __future__ import annotations

import logging
from bisect import bisect_left, bisect_right
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from itertools import combinations
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

import networkx as nx
from networkx.utils import UnionFind

from .common import InvalidInterval, NeighborhoodNotFound
from .field import Rational, ScalarField, to_fraction
from .mesh import (
    Edge,
    Simplex,
    SimplicialSurface,
    SurfaceSignature,
    Triangle,
    connected_components,
    directed_edges,
    edge_key,
    signature,
    submesh,
    validate_surface,
)

logger = logging.getLogger(__name__)

Cell = Simplex


def _cell_range(field_: ScalarField, cell: Cell) -> Tuple[Fraction, Fraction]:
    values = [field_[v] for v in cell]
    return min(values), max(values)


def _strictly_crosses(field_: ScalarField, edge: Edge, level: Fraction) -> bool:
    lo, hi = sorted((field_[edge[0]], field_[edge[1]]))
    return lo < level < hi


def flat_clusters(mesh: SimplicialSurface, field_: ScalarField) -> List[Tuple[int, ...]]:
    """Particiona os vertices em plateaus: classes ligadas por arestas de valor constante."""
    field_.check_against(mesh.vertex_count)
    forest = UnionFind(range(mesh.vertex_count))
    for a, b in mesh.edges:
        if field_[a] == field_[b]:
            forest.union(a, b)
    return sorted((tuple(sorted(group)) for group in forest.to_sets()), key=lambda c: c[0])


def _meeting_components(
    mesh: SimplicialSurface, field_: ScalarField, lo: Fraction, hi: Fraction
) -> List[FrozenSet[Cell]]:
    forest: UnionFind = UnionFind()
    for triangle in mesh.triangles:
        key = tuple(sorted(triangle))
        t_lo, t_hi = _cell_range(field_, key)
        if t_lo > hi or t_hi < lo:
            continue
        faces: List[Cell] = [key]
        for edge in combinations(key, 2):
            e_lo, e_hi = _cell_range(field_, edge)
            if e_lo <= hi and e_hi >= lo:
                faces.append(edge)
        faces.extend((v,) for v in key if lo <= field_[v] <= hi)
        forest.union(*faces)
    components = [frozenset(group) for group in forest.to_sets()]
    return sorted(components, key=min)


@dataclass(frozen=True)
class LevelComponent:
    """Componente conexa de ``f^{-1}(level)``, descrita pelos simplexos que a encontram."""

    level: Fraction
    index: int
    cells: FrozenSet[Cell]

    @property
    def min_cell(self) -> Cell:
        return min(self.cells)

    @property
    def vertices(self) -> Tuple[int, ...]:
        return tuple(sorted(c[0] for c in self.cells if len(c) == 1))


def level_components(
    mesh: SimplicialSurface, field_: ScalarField, level: Rational
) -> List[LevelComponent]:
    """Componentes do conjunto de nivel ``f^{-1}(level)`` em ordem canonica.

    Plateaus no valor ``level`` entram inteiros; fora da imagem do campo o
    resultado e uma lista vazia.
    """
    t = to_fraction(level)
    field_.check_against(mesh.vertex_count)
    groups = _meeting_components(mesh, field_, t, t)
    return [LevelComponent(t, index, cells) for index, cells in enumerate(groups)]


@dataclass(frozen=True)
class SlicedSurface:
    """Refinamento exato da malha em que cada nivel de corte vira um subcomplexo.

    Os vertices originais mantem seus ids; cada ponto de corte e portado por
    uma aresta original (``carriers``) e cada triangulo refinado lembra o
    triangulo de origem (``origins``).
    """

    mesh: SimplicialSurface
    field: ScalarField
    carriers: Tuple[Cell, ...]
    origins: Tuple[int, ...]


def _band_polygon(
    triangle: Triangle,
    values: Sequence[Fraction],
    lower: Fraction,
    upper: Fraction,
    cut_ids: Dict[Tuple[Edge, Fraction], int],
) -> List[int]:
    polygon: List[int] = []
    for p, q in directed_edges(triangle):
        fp, fq = values[p], values[q]
        if lower <= fp <= upper:
            polygon.append(p)
        low, high = min(fp, fq), max(fp, fq)
        crossing = [lvl for lvl in (lower, upper) if low < lvl < high]
        if fp > fq:
            crossing.reverse()
        polygon.extend(cut_ids[(edge_key(p, q), lvl)] for lvl in crossing)
    return polygon


def slice_surface(
    mesh: SimplicialSurface, field_: ScalarField, levels: Iterable[Rational]
) -> SlicedSurface:
    """Corta cada triangulo ao longo dos niveis dados, preservando a orientacao.

    Cada triangulo nao plano e dividido nas faixas entre seu minimo, os niveis
    estritamente internos e seu maximo; cada faixa e um poligono convexo
    triangulado em leque a partir do primeiro vertice.
    """
    field_.check_against(mesh.vertex_count)
    cuts = sorted({to_fraction(level) for level in levels})
    values: List[Fraction] = list(field_.values)
    carriers: List[Cell] = [(v,) for v in range(mesh.vertex_count)]
    cut_ids: Dict[Tuple[Edge, Fraction], int] = {}
    for edge in mesh.edges:
        lo, hi = sorted((values[edge[0]], values[edge[1]]))
        for level in cuts[bisect_right(cuts, lo):bisect_left(cuts, hi)]:
            cut_ids[(edge, level)] = len(values)
            values.append(level)
            carriers.append(edge)

    triangles: List[Triangle] = []
    origins: List[int] = []
    for index, triangle in enumerate(mesh.triangles):
        tri_values = [values[v] for v in triangle]
        lo, hi = min(tri_values), max(tri_values)
        if lo == hi:
            triangles.append(triangle)
            origins.append(index)
            continue
        bounds = [lo, *cuts[bisect_right(cuts, lo):bisect_left(cuts, hi)], hi]
        for lower, upper in zip(bounds, bounds[1:]):
            polygon = _band_polygon(triangle, values, lower, upper, cut_ids)
            for k in range(1, len(polygon) - 1):
                triangles.append((polygon[0], polygon[k], polygon[k + 1]))
                origins.append(index)

    logger.debug(
        "Corte em %d niveis: %d -> %d triangulos", len(cuts), len(mesh.triangles), len(triangles)
    )
    return SlicedSurface(
        SimplicialSurface(len(values), tuple(triangles)),
        ScalarField(tuple(values)),
        tuple(carriers),
        tuple(origins),
    )


def piece_signature(piece: Optional[SimplicialSurface]) -> Optional[SurfaceSignature]:
    """Assinatura de um pedaco refinado, ou ``None`` se nao for superficie conexa."""
    if piece is None or not piece.triangles:
        return None
    if not validate_surface(piece).ok or len(connected_components(piece)) != 1:
        return None
    return signature(piece)


def extract_region(
    sliced: SlicedSurface,
    vertices: Iterable[int],
    edges: Iterable[Edge],
    triangles: Iterable[int],
) -> Tuple[Optional[SimplicialSurface], bool]:
    """Monta o pedaco 2-dimensional de uma componente refinada.

    Returns
    -------
    tuple
        A submalha dos triangulos (``None`` se nao houver) e se a componente
        e puramente 2-dimensional, isto e, se todos os seus vertices e arestas
        sao faces desses triangulos.
    """
    chosen = sorted(set(triangles))
    covered_vertices = {v for i in chosen for v in sliced.mesh.triangles[i]}
    covered_edges = {
        edge_key(a, b) for i in chosen for a, b in directed_edges(sliced.mesh.triangles[i])
    }
    pure = set(vertices) <= covered_vertices and set(edges) <= covered_edges
    if not chosen:
        return None, pure
    region, _ = submesh(sliced.mesh, chosen)
    return region, pure


@dataclass(frozen=True)
class IntervalComponent:
    """Componente conexa de ``f^{-1}([lo, hi])``.

    ``lower`` e ``upper`` sao os indices (em :func:`level_components`) das
    componentes de nivel ``lo`` e ``hi`` contidas nela.
    """

    lo: Fraction
    hi: Fraction
    index: int
    cells: FrozenSet[Cell]
    lower: Tuple[int, ...]
    upper: Tuple[int, ...]
    region: Optional[SimplicialSurface] = field(default=None, compare=False, repr=False)
    pure: bool = field(default=False, compare=False)

    @cached_property
    def signature(self) -> Optional[SurfaceSignature]:
        """Assinatura do pedaco exato, quando ele e uma superficie conexa."""
        if not self.pure:
            return None
        return piece_signature(self.region)


def interval_components(
    mesh: SimplicialSurface, field_: ScalarField, a: Rational, b: Rational
) -> List[IntervalComponent]:
    """Componentes de ``f^{-1}([a, b])`` com as componentes de nivel que contem.

    Raises
    ------
    InvalidInterval
        Se ``a > b``.
    """
    lo, hi = to_fraction(a), to_fraction(b)
    if lo > hi:
        raise InvalidInterval(f"Intervalo invertido [{lo}, {hi}]", location=(str(lo), str(hi)))
    field_.check_against(mesh.vertex_count)

    groups = _meeting_components(mesh, field_, lo, hi)
    owner: Dict[Cell, int] = {cell: index for index, cells in enumerate(groups) for cell in cells}
    lower: Dict[int, List[int]] = {index: [] for index in range(len(groups))}
    upper: Dict[int, List[int]] = {index: [] for index in range(len(groups))}
    for comp in level_components(mesh, field_, lo):
        lower[owner[comp.min_cell]].append(comp.index)
    for comp in level_components(mesh, field_, hi):
        upper[owner[comp.min_cell]].append(comp.index)

    sliced = slice_surface(mesh, field_, (lo, hi))
    refined = sliced.mesh
    inside = [lo <= value <= hi for value in sliced.field]

    def component_of(vertex: int) -> int:
        return owner[sliced.carriers[vertex]]

    members: Dict[int, Tuple[List[int], List[Edge], List[int]]] = {
        index: ([], [], []) for index in range(len(groups))
    }
    for vertex in range(refined.vertex_count):
        if inside[vertex]:
            members[component_of(vertex)][0].append(vertex)
    for a_, b_ in refined.edges:
        if inside[a_] and inside[b_]:
            members[component_of(a_)][1].append((a_, b_))
    for index, triangle in enumerate(refined.triangles):
        if all(inside[v] for v in triangle):
            members[component_of(triangle[0])][2].append(index)

    result = []
    for index, cells in enumerate(groups):
        region, pure = extract_region(sliced, *members[index])
        result.append(
            IntervalComponent(
                lo, hi, index, cells, tuple(lower[index]), tuple(upper[index]), region, pure
            )
        )
    logger.debug("Intervalo [%s, %s]: %d componentes", lo, hi, len(result))
    return result


def neighborhood_radius(field_: ScalarField, level: Rational) -> Fraction:
    """Metade da distancia de ``level`` ao valor de vertice distinto mais proximo."""
    t = to_fraction(level)
    gaps = [abs(value - t) for value in field_.distinct_values() if value != t]
    if not gaps:
        return Fraction(1)
    return min(gaps) / 2


def node_neighborhood(
    mesh: SimplicialSurface,
    field_: ScalarField,
    level: Rational,
    seed: Iterable[Cell],
    delta: Optional[Rational] = None,
) -> IntervalComponent:
    """Vizinhanca regular de uma componente de nivel.

    E a componente de ``f^{-1}([level - delta, level + delta])`` que contem
    as celulas ``seed``; por padrao ``delta`` vem de :func:`neighborhood_radius`.

    Raises
    ------
    NeighborhoodNotFound
        Se nenhuma componente do intervalo encontrar ``seed``.
    """
    t = to_fraction(level)
    radius = neighborhood_radius(field_, t) if delta is None else to_fraction(delta)
    seeds = frozenset(seed)
    for comp in interval_components(mesh, field_, t - radius, t + radius):
        if comp.cells & seeds:
            return comp
    raise NeighborhoodNotFound(
        f"Nenhuma componente em torno do nivel {t} contem as celulas dadas",
        location=(str(t - radius), str(t + radius)),
    )


def level_graph(
    mesh: SimplicialSurface, field_: ScalarField, component: LevelComponent
) -> nx.Graph:
    """Grafo PL do conjunto de nivel de uma componente.

    Os nos sao os pontos do nivel identificados pelo simplexo portador
    (vertice no nivel ou aresta cruzada); cada triangulo liga os pontos de
    nivel do seu bordo.
    """
    t = component.level
    graph = nx.Graph()
    for cell in component.cells:
        if len(cell) == 1 or (len(cell) == 2 and _strictly_crosses(field_, cell, t)):
            graph.add_node(cell)
    for cell in component.cells:
        if len(cell) != 3:
            continue
        points: List[Cell] = [(v,) for v in cell if field_[v] == t]
        points.extend(e for e in combinations(cell, 2) if _strictly_crosses(field_, e, t))
        graph.add_edges_from(combinations(points, 2))
    return graph


def is_simple_cycle(graph: nx.Graph) -> bool:
    """Verdadeiro se o grafo for um unico ciclo simples."""
    if graph.number_of_nodes() < 3 or not nx.is_connected(graph):
        return False
    return all(degree == 2 for _, degree in graph.degree())
