"""Superficies trianguladas: representacao, validacao e classificacao.

Este modulo concentra o nucleo combinatorio das malhas: a classe imutavel
:class:`SimplicialSurface`, a assinatura de classificacao
:class:`SurfaceSignature` e as operacoes puras de validacao, caracteristica
de Euler, orientabilidade, componentes de bordo e subdivisao uniforme.
"""

from __future__ import annotations

import logging
from collections import defaultdict, deque
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Any, Dict, Iterable, List, Optional, Sequence, Tuple

import networkx as nx
from networkx.utils import UnionFind
from pydantic import BaseModel, ConfigDict, Field, ValidationError, model_validator

from .common import (
    DegenerateTriangle,
    DisconnectedMesh,
    DuplicateTriangle,
    InvalidSignature,
    MeshError,
    NonManifoldEdge,
    NonManifoldVertex,
    UnusedVertex,
    raise_first,
)
from .field import ScalarField

logger = logging.getLogger(__name__)

Simplex = Tuple[int, ...]
Edge = Tuple[int, int]
Triangle = Tuple[int, int, int]
Coordinates = Tuple[str, str, str]


def edge_key(a: int, b: int) -> Edge:
    """Aresta nao orientada na forma canonica ``(menor, maior)``."""
    return (a, b) if a < b else (b, a)


def directed_edges(triangle: Triangle) -> Tuple[Edge, Edge, Edge]:
    """Arestas orientadas na ordem ciclica do triangulo."""
    a, b, c = triangle
    return ((a, b), (b, c), (c, a))


def has_directed_edge(triangle: Triangle, a: int, b: int) -> bool:
    return (a, b) in directed_edges(triangle)


def flipped(triangle: Triangle) -> Triangle:
    a, b, c = triangle
    return (a, c, b)


@dataclass(frozen=True)
class SimplicialSurface:
    """Triangulacao de uma 2-variedade (possivelmente com bordo).

    Os vertices sao inteiros densos ``0..vertex_count-1``; a ordem dos
    vertices em cada triangulo e a testemunha de orientacao. As coordenadas
    sao apenas transportadas para a escrita em OFF.
    """

    vertex_count: int
    triangles: Tuple[Triangle, ...]
    coordinates: Optional[Tuple[Coordinates, ...]] = field(default=None, compare=False)

    @classmethod
    def from_triangles(
        cls,
        triangles: Iterable[Sequence[int]],
        vertex_count: Optional[int] = None,
        coordinates: Optional[Sequence[Coordinates]] = None,
    ) -> "SimplicialSurface":
        tris = tuple((int(t[0]), int(t[1]), int(t[2])) for t in triangles)
        if vertex_count is None:
            vertex_count = 1 + max((v for t in tris for v in t), default=-1)
        coords = tuple(tuple(c) for c in coordinates) if coordinates is not None else None
        return cls(vertex_count, tris, coords)  # type: ignore[arg-type]

    @cached_property
    def edge_triangles(self) -> Dict[Edge, Tuple[int, ...]]:
        """Incidencia aresta -> indices dos triangulos que a contem."""
        incidence: Dict[Edge, List[int]] = defaultdict(list)
        for index, (a, b, c) in enumerate(self.triangles):
            for u, v in ((a, b), (b, c), (c, a)):
                if u != v:
                    incidence[edge_key(u, v)].append(index)
        return {edge: tuple(tris) for edge, tris in sorted(incidence.items())}

    @cached_property
    def vertex_triangles(self) -> Dict[int, Tuple[int, ...]]:
        incidence: Dict[int, List[int]] = defaultdict(list)
        for index, triangle in enumerate(self.triangles):
            for v in set(triangle):
                incidence[v].append(index)
        return {v: tuple(tris) for v, tris in incidence.items()}

    @property
    def edges(self) -> Tuple[Edge, ...]:
        return tuple(self.edge_triangles)

    @cached_property
    def boundary_edges(self) -> Tuple[Edge, ...]:
        return tuple(e for e, tris in self.edge_triangles.items() if len(tris) == 1)

    @property
    def has_boundary(self) -> bool:
        return bool(self.boundary_edges)

    @cached_property
    def neighbors(self) -> Dict[int, Tuple[int, ...]]:
        adjacency: Dict[int, set[int]] = defaultdict(set)
        for a, b in self.edge_triangles:
            adjacency[a].add(b)
            adjacency[b].add(a)
        return {v: tuple(sorted(adj)) for v, adj in adjacency.items()}

    def simplices(self) -> List[Simplex]:
        """Todos os simplexos como tuplas ordenadas de vertices."""
        cells: List[Simplex] = [(v,) for v in range(self.vertex_count)]
        cells.extend(self.edges)
        cells.extend(tuple(sorted(t)) for t in self.triangles)
        return cells


class SurfaceSignature(BaseModel):
    """Tipo topologico de uma superficie compacta conexa.

    ``genus`` conta alcas se a superficie for orientavel e crosscaps caso
    contrario. A validacao impoe as equacoes da classificacao.
    """

    model_config = ConfigDict(frozen=True)

    orientable: bool
    genus: int = Field(ge=0)
    boundary_count: int = Field(ge=0)
    euler_char: int

    @model_validator(mode="after")
    def _check_classification(self) -> "SurfaceSignature":
        if self.orientable:
            expected = 2 - 2 * self.genus - self.boundary_count
        else:
            if self.genus < 1:
                raise ValueError("Superficie nao orientavel exige ao menos um crosscap")
            expected = 2 - self.genus - self.boundary_count
        if self.euler_char != expected:
            raise ValueError(
                f"Caracteristica de Euler {self.euler_char} incompativel (esperado {expected})"
            )
        return self

    @classmethod
    def build(cls, orientable: bool, genus: int, boundary_count: int) -> "SurfaceSignature":
        """Monta a assinatura calculando a caracteristica de Euler."""
        if orientable:
            chi = 2 - 2 * genus - boundary_count
        else:
            chi = 2 - genus - boundary_count
        return cls.checked(orientable, genus, boundary_count, chi)

    @classmethod
    def checked(
        cls, orientable: bool, genus: int, boundary_count: int, euler_char: int
    ) -> "SurfaceSignature":
        try:
            return cls(
                orientable=orientable,
                genus=genus,
                boundary_count=boundary_count,
                euler_char=euler_char,
            )
        except ValidationError as exc:
            raise InvalidSignature(
                f"Assinatura invalida: {exc.errors()[0]['msg']}",
                location=(orientable, genus, boundary_count, euler_char),
            ) from exc

    @classmethod
    def from_euler(
        cls, orientable: bool, euler_char: int, boundary_count: int
    ) -> "SurfaceSignature":
        """Resolve o genero a partir de chi, orientabilidade e numero de bordos."""
        deficit = 2 - euler_char - boundary_count
        if orientable:
            if deficit % 2:
                raise InvalidSignature("Genero nao inteiro", location=(euler_char, boundary_count))
            genus = deficit // 2
        else:
            genus = deficit
        return cls.checked(orientable, genus, boundary_count, euler_char)

    @property
    def is_annulus(self) -> bool:
        return self.orientable and self.genus == 0 and self.boundary_count == 2

    @property
    def is_disk(self) -> bool:
        return self.orientable and self.genus == 0 and self.boundary_count == 1

    def to_dict(self) -> Dict[str, Any]:
        """Forma JSON da CLI: ``genus`` ou ``crosscaps`` conforme a orientabilidade."""
        key = "genus" if self.orientable else "crosscaps"
        return {
            "orientable": self.orientable,
            key: self.genus,
            "boundary": self.boundary_count,
            "chi": self.euler_char,
        }


ANNULUS = SurfaceSignature.build(True, 0, 2)
DISK = SurfaceSignature.build(True, 0, 1)
SPHERE = SurfaceSignature.build(True, 0, 0)


@dataclass(frozen=True)
class ValidationReport:
    """Resultado de :func:`validate_surface`."""

    violations: Tuple[MeshError, ...] = ()

    @property
    def ok(self) -> bool:
        return not self.violations

    def raise_for_violations(self) -> None:
        raise_first(self.violations)

    def to_dict(self) -> Dict[str, Any]:
        return {"valid": self.ok, "violations": [v.to_dict() for v in self.violations]}


def _link_shape(link_edges: set[Edge]) -> Optional[str]:
    """Classifica o link de um vertice: ``"path"``, ``"cycle"`` ou ``None``."""
    link = nx.Graph()
    link.add_edges_from(link_edges)
    if max(degree for _, degree in link.degree()) > 2 or not nx.is_connected(link):
        return None
    if link.number_of_edges() == link.number_of_nodes():
        return "cycle"
    if link.number_of_edges() == link.number_of_nodes() - 1:
        return "path"
    return None


def validate_surface(mesh: SimplicialSurface) -> ValidationReport:
    """Verifica todas as invariantes de :class:`SimplicialSurface`.

    Parameters
    ----------
    mesh : SimplicialSurface
        Qualquer sopa de triangulos.

    Returns
    -------
    ValidationReport
        Relatorio vazio se a malha for valida; caso contrario uma violacao
        por triangulo, aresta ou vertice problematico.
    """
    violations: List[MeshError] = []
    seen: Dict[Tuple[int, ...], int] = {}
    for index, triangle in enumerate(mesh.triangles):
        if any(v < 0 or v >= mesh.vertex_count for v in triangle):
            violations.append(MeshError("Vertice fora do intervalo", location=index))
            continue
        if len(set(triangle)) < 3:
            violations.append(DegenerateTriangle("Triangulo degenerado", location=index))
            continue
        key = tuple(sorted(triangle))
        if key in seen:
            violations.append(
                DuplicateTriangle("Triangulo duplicado", location=(seen[key], index))
            )
        else:
            seen[key] = index

    for edge, tris in mesh.edge_triangles.items():
        if len(tris) >= 3:
            violations.append(
                NonManifoldEdge(f"Aresta em {len(tris)} triangulos", location=edge)
            )

    links: Dict[int, set[Edge]] = defaultdict(set)
    for key in seen:
        for v in key:
            others = tuple(u for u in key if u != v)
            links[v].add(edge_key(*others))
    for v in range(mesh.vertex_count):
        if v not in links:
            violations.append(UnusedVertex("Vertice sem triangulos", location=v))
        elif _link_shape(links[v]) is None:
            violations.append(
                NonManifoldVertex("Link nao e um caminho nem um ciclo", location=v)
            )

    if violations:
        logger.debug("Malha invalida: %d violacoes", len(violations))
    return ValidationReport(tuple(violations))


def euler_characteristic(mesh: SimplicialSurface) -> int:
    """Retorna V - E + F."""
    return mesh.vertex_count - len(mesh.edge_triangles) + len(mesh.triangles)


def connected_components(mesh: SimplicialSurface) -> List[Tuple[int, ...]]:
    """Particiona os triangulos em componentes conexas (ordem canonica)."""
    forest = UnionFind(range(mesh.vertex_count))
    for a, b, c in mesh.triangles:
        forest.union(a, b, c)
    groups: Dict[int, List[int]] = defaultdict(list)
    for index, triangle in enumerate(mesh.triangles):
        groups[forest[triangle[0]]].append(index)
    return sorted((tuple(g) for g in groups.values()), key=lambda g: g[0])


def submesh(
    mesh: SimplicialSurface, triangle_indices: Iterable[int]
) -> Tuple[SimplicialSurface, Dict[int, int]]:
    """Extrai os triangulos indicados com vertices renumerados densamente.

    Returns
    -------
    tuple
        A nova malha e o mapa vertice antigo -> vertice novo.
    """
    chosen = [mesh.triangles[i] for i in triangle_indices]
    old_ids = sorted({v for t in chosen for v in t})
    relabel = {old: new for new, old in enumerate(old_ids)}
    coords = None
    if mesh.coordinates is not None:
        coords = tuple(mesh.coordinates[old] for old in old_ids)
    triangles = tuple((relabel[a], relabel[b], relabel[c]) for a, b, c in chosen)
    return SimplicialSurface(len(old_ids), triangles, coords), relabel


def _require_connected(mesh: SimplicialSurface) -> None:
    components = connected_components(mesh)
    if len(components) > 1:
        raise DisconnectedMesh(
            f"Malha com {len(components)} componentes; separe-as antes",
            location=len(components),
        )


@dataclass(frozen=True)
class OrientationResult:
    orientable: bool
    triangles: Optional[Tuple[Triangle, ...]] = None

    def __bool__(self) -> bool:
        return self.orientable


def orientability(mesh: SimplicialSurface) -> OrientationResult:
    """Tenta orientar os triangulos de forma coerente por busca em largura.

    Cada aresta interior deve ser percorrida uma vez em cada sentido. O
    triangulo 0 mantem sua orientacao; a propagacao falha no primeiro
    fechamento inconsistente.

    Raises
    ------
    DisconnectedMesh
        Se a malha tiver mais de uma componente.
    """
    _require_connected(mesh)
    if not mesh.triangles:
        return OrientationResult(True, ())
    oriented: Dict[int, Triangle] = {0: mesh.triangles[0]}
    queue = deque([0])
    while queue:
        index = queue.popleft()
        current = oriented[index]
        for a, b in directed_edges(current):
            for other in mesh.edge_triangles[edge_key(a, b)]:
                if other == index:
                    continue
                if other in oriented:
                    if has_directed_edge(oriented[other], a, b):
                        return OrientationResult(False)
                    continue
                candidate = mesh.triangles[other]
                if has_directed_edge(candidate, a, b):
                    candidate = flipped(candidate)
                oriented[other] = candidate
                queue.append(other)
    return OrientationResult(True, tuple(oriented[i] for i in range(len(mesh.triangles))))


def boundary_components(mesh: SimplicialSurface) -> List[Tuple[int, ...]]:
    """Percorre as arestas de bordo como ciclos simples disjuntos.

    Cada ciclo comeca no menor vertice e segue, quando possivel, o sentido
    induzido pelo triangulo da primeira aresta; numa malha orientada de forma
    coerente isso da a orientacao de bordo induzida.

    Raises
    ------
    MeshError
        Se as arestas de bordo nao se particionarem em ciclos simples.
    """
    adjacency: Dict[int, List[int]] = defaultdict(list)
    outgoing: set[Edge] = set()
    for edge in mesh.boundary_edges:
        a, b = edge
        adjacency[a].append(b)
        adjacency[b].append(a)
        (tri_index,) = mesh.edge_triangles[edge]
        triangle = mesh.triangles[tri_index]
        outgoing.add((a, b) if has_directed_edge(triangle, a, b) else (b, a))
    for v, nbrs in adjacency.items():
        if len(nbrs) != 2:
            raise MeshError("Bordo nao se decompoe em ciclos simples", location=v)

    cycles: List[Tuple[int, ...]] = []
    visited: set[int] = set()
    for start in sorted(adjacency):
        if start in visited:
            continue
        first, second = sorted(adjacency[start])
        nxt = second if (start, second) in outgoing and (start, first) not in outgoing else first
        cycle = [start]
        visited.add(start)
        previous, current = start, nxt
        while current != start:
            if current in visited:
                raise MeshError("Ciclo de bordo nao simples", location=current)
            cycle.append(current)
            visited.add(current)
            a, b = adjacency[current]
            previous, current = current, (b if a == previous else a)
        cycles.append(tuple(cycle))
    return cycles


def signature(mesh: SimplicialSurface) -> SurfaceSignature:
    """Classifica uma malha conexa valida pela sua assinatura.

    Raises
    ------
    DisconnectedMesh
        Se a malha tiver mais de uma componente.
    """
    _require_connected(mesh)
    chi = euler_characteristic(mesh)
    orientable = orientability(mesh).orientable
    boundaries = len(boundary_components(mesh))
    return SurfaceSignature.from_euler(orientable, chi, boundaries)


def subdivide(mesh: SimplicialSurface) -> SimplicialSurface:
    """Subdivisao uniforme 1 -> 4 preservando a orientacao de cada triangulo.

    O ponto medio da aresta de indice ``i`` (na ordem canonica de
    :attr:`SimplicialSurface.edges`) recebe o id ``vertex_count + i``.
    """
    midpoint = {edge: mesh.vertex_count + i for i, edge in enumerate(mesh.edges)}
    triangles: List[Triangle] = []
    for a, b, c in mesh.triangles:
        ab, bc, ca = midpoint[edge_key(a, b)], midpoint[edge_key(b, c)], midpoint[edge_key(c, a)]
        triangles.extend(((a, ab, ca), (ab, b, bc), (ca, bc, c), (ab, bc, ca)))
    return SimplicialSurface(mesh.vertex_count + len(midpoint), tuple(triangles))


def subdivide_field(mesh: SimplicialSurface, field_: ScalarField) -> ScalarField:
    """Estende o campo a :func:`subdivide` pela media exata nos pontos medios."""
    field_.check_against(mesh.vertex_count)
    extra = [(field_[a] + field_[b]) / 2 for a, b in mesh.edges]
    return ScalarField(tuple(field_.values) + tuple(Fraction(v) for v in extra))
