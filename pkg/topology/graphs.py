"""Esqueletos de multigrafos, isomorfismo exato e primeiro numero de Betti."""

from __future__ import annotations

import logging
from collections import Counter, defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Hashable, List, Mapping, Optional, Protocol, Sequence, Tuple, Union

import networkx as nx

logger = logging.getLogger(__name__)

Node = Hashable


@dataclass(frozen=True)
class GraphSkeleton:
    """Multigrafo sem lacos: nos, arestas (pares, repeticoes permitidas) e niveis opcionais."""

    nodes: Tuple[Node, ...]
    edges: Tuple[Tuple[Node, Node], ...]
    levels: Optional[Mapping[Node, Fraction]] = field(default=None, compare=False)

    def to_networkx(self) -> nx.MultiGraph:
        graph = nx.MultiGraph()
        graph.add_nodes_from(self.nodes)
        graph.add_edges_from(self.edges)
        return graph


class SupportsSkeleton(Protocol):
    def skeleton(self) -> GraphSkeleton: ...


GraphLike = Union[GraphSkeleton, SupportsSkeleton]


def as_skeleton(graph: GraphLike) -> GraphSkeleton:
    if isinstance(graph, GraphSkeleton):
        return graph
    return graph.skeleton()


@dataclass(frozen=True)
class IsomorphismResult:
    isomorphic: bool
    witness: Optional[Dict[Node, Node]] = None

    def __bool__(self) -> bool:
        return self.isomorphic


def _multiplicities(skeleton: GraphSkeleton) -> Dict[Node, Counter]:
    table: Dict[Node, Counter] = {node: Counter() for node in skeleton.nodes}
    for u, v in skeleton.edges:
        table[u][v] += 1
        table[v][u] += 1
    return table


def _level_ranks(skeleton: GraphSkeleton) -> Dict[Node, int]:
    if skeleton.levels is None:
        raise ValueError("Comparacao por niveis exige niveis nos dois grafos")
    ordered = sorted(set(skeleton.levels[n] for n in skeleton.nodes))
    rank = {level: i for i, level in enumerate(ordered)}
    return {node: rank[skeleton.levels[node]] for node in skeleton.nodes}


def _invariants(
    skeleton: GraphSkeleton, table: Dict[Node, Counter], respect_levels: bool
) -> Dict[Node, tuple]:
    degree = {node: sum(table[node].values()) for node in skeleton.nodes}
    ranks = _level_ranks(skeleton) if respect_levels else {}
    result = {}
    for node in skeleton.nodes:
        neighbor_degrees = sorted(
            degree[other] for other, count in table[node].items() for _ in range(count)
        )
        result[node] = (degree[node], tuple(neighbor_degrees), ranks.get(node, 0))
    return result


def _search_order(
    nodes: Sequence[Node], table: Dict[Node, Counter], candidates: Dict[Node, List[Node]]
) -> List[Node]:
    position = {node: i for i, node in enumerate(nodes)}
    order: List[Node] = []
    placed: set = set()
    while len(order) < len(nodes):
        best = min(
            (n for n in nodes if n not in placed),
            key=lambda n: (
                -sum(1 for other in table[n] if other in placed),
                len(candidates[n]),
                position[n],
            ),
        )
        order.append(best)
        placed.add(best)
    return order


def graph_isomorphic(
    first: GraphLike, second: GraphLike, respect_levels: bool = False
) -> IsomorphismResult:
    """Busca exata por um isomorfismo de multigrafos.

    Parameters
    ----------
    first, second : GraphSkeleton ou objeto com ``skeleton()``
        Multigrafos sem lacos.
    respect_levels : bool
        Exige que a bijecao preserve a ordem dos niveis (postos iguais).

    Returns
    -------
    IsomorphismResult
        Com a bijecao testemunha quando os grafos sao isomorfos.
    """
    g1, g2 = as_skeleton(first), as_skeleton(second)
    if len(g1.nodes) != len(g2.nodes) or len(g1.edges) != len(g2.edges):
        return IsomorphismResult(False)
    t1, t2 = _multiplicities(g1), _multiplicities(g2)
    inv1 = _invariants(g1, t1, respect_levels)
    inv2 = _invariants(g2, t2, respect_levels)
    if Counter(inv1.values()) != Counter(inv2.values()):
        return IsomorphismResult(False)

    by_invariant: Dict[tuple, List[Node]] = defaultdict(list)
    for node in g2.nodes:
        by_invariant[inv2[node]].append(node)
    candidates = {node: by_invariant[inv1[node]] for node in g1.nodes}
    order = _search_order(g1.nodes, t1, candidates)

    mapping: Dict[Node, Node] = {}
    used: set = set()

    def consistent(u: Node, w: Node) -> bool:
        for mapped_u, mapped_w in mapping.items():
            if t1[u][mapped_u] != t2[w][mapped_w]:
                return False
        return True

    def extend(depth: int) -> bool:
        if depth == len(order):
            return True
        u = order[depth]
        for w in candidates[u]:
            if w in used or not consistent(u, w):
                continue
            mapping[u] = w
            used.add(w)
            if extend(depth + 1):
                return True
            del mapping[u]
            used.discard(w)
        return False

    if extend(0):
        return IsomorphismResult(True, {u: mapping[u] for u in g1.nodes})
    return IsomorphismResult(False)


def betti1(graph: GraphLike) -> int:
    """Primeiro numero de Betti: ``E - V + componentes``."""
    skeleton = as_skeleton(graph)
    multigraph = skeleton.to_networkx()
    components = nx.number_connected_components(multigraph) if skeleton.nodes else 0
    return len(skeleton.edges) - len(skeleton.nodes) + components
