"""Construcao combinatoria de superficies: faixas de costura, blocos e tubos.

Toda colagem e feita por faixas (``zipper``) entre dois ciclos disjuntos;
pecas nunca sao coladas identificando vertices, de modo que o resultado e
sempre simplicial. Ciclos de bordo sao guardados na orientacao induzida pela
peca; para colar duas pecas orientadas de forma coerente usa-se
``zipper(ciclo_a, reversed(ciclo_b))``.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, List, Sequence, Tuple

from .common import InvalidInterval, InvalidOption
from .field import Rational, ScalarField, to_fraction
from .mesh import SimplicialSurface, SurfaceSignature, Triangle, boundary_components, subdivide
from .shapes import mobius_strip, octahedron, torus_grid

logger = logging.getLogger(__name__)

Cycle = Tuple[int, ...]


def zipper(first: Sequence[int], second: Sequence[int]) -> List[Triangle]:
    """Faixa de ``len(first) + len(second)`` triangulos entre dois ciclos disjuntos.

    A faixa percorre ``first`` no sentido inverso e ``second`` no sentido
    direto, comecando pela diagonal ``first[0]``-``second[0]``.
    """
    a, b = len(first), len(second)
    if a < 3 or b < 3:
        raise InvalidOption("Ciclos precisam de pelo menos 3 vertices", location=(a, b))
    triangles: List[Triangle] = []
    i = j = 0
    while i < a or j < b:
        if j == b or (i < a and (i + 1) * b <= (j + 1) * a):
            triangles.append((first[(i + 1) % a], first[i], second[j % b]))
            i += 1
        else:
            triangles.append((second[j], second[(j + 1) % b], first[i % a]))
            j += 1
    return triangles


def punch_holes(
    mesh: SimplicialSurface, count: int
) -> Tuple[SimplicialSurface, List[Cycle]]:
    """Remove ``count`` triangulos dois a dois disjuntos em vertices.

    A malha e subdividida ate haver triangulos suficientes. Cada furo deixa um
    ciclo de bordo ``(y, x, z)`` para o triangulo removido ``(x, y, z)``, que
    e a orientacao induzida pelos vizinhos.
    """
    if count <= 0:
        return mesh, []
    while True:
        chosen: List[int] = []
        used: set[int] = set()
        for index, triangle in enumerate(mesh.triangles):
            if used.isdisjoint(triangle):
                chosen.append(index)
                used.update(triangle)
                if len(chosen) == count:
                    break
        if len(chosen) == count:
            break
        mesh = subdivide(mesh)
    removed = set(chosen)
    kept = tuple(t for index, t in enumerate(mesh.triangles) if index not in removed)
    rims = [(y, x, z) for x, y, z in (mesh.triangles[index] for index in chosen)]
    return SimplicialSurface(mesh.vertex_count, kept), rims


class SurfaceBuilder:
    """Acumula pecas disjuntas e faixas de costura numa unica malha."""

    def __init__(self) -> None:
        self.vertex_count = 0
        self.triangles: List[Triangle] = []

    def fresh(self, count: int) -> List[int]:
        start = self.vertex_count
        self.vertex_count += count
        return list(range(start, start + count))

    def add(self, mesh: SimplicialSurface) -> Tuple[int, range]:
        """Copia a malha com vertices deslocados; retorna o deslocamento e os triangulos."""
        offset = self.vertex_count
        self.vertex_count += mesh.vertex_count
        shifted = ((a + offset, b + offset, c + offset) for a, b, c in mesh.triangles)
        return offset, self.extend(shifted)

    def extend(self, triangles: Iterable[Triangle]) -> range:
        start = len(self.triangles)
        self.triangles.extend(triangles)
        return range(start, len(self.triangles))

    def zip(self, first: Sequence[int], second: Sequence[int]) -> range:
        return self.extend(zipper(first, second))

    def build(self) -> SimplicialSurface:
        return SimplicialSurface(self.vertex_count, tuple(self.triangles))


@dataclass(frozen=True)
class VertexBlock:
    """Superficie de um vertice decorado com seus ciclos de bordo (p-gonos)."""

    mesh: SimplicialSurface
    cycles: Tuple[Cycle, ...]


_MOBIUS_RIM: Cycle = boundary_components(mobius_strip())[0]


def build_vertex_block(sig: SurfaceSignature, p: int = 6) -> VertexBlock:
    """Triangula uma superficie com a assinatura dada e bordos em p-gonos.

    Parte do octaedro com ``boundary + alcas + crosscaps`` furos; cada alca e
    um toro com um furo, cada crosscap uma faixa de Mobius, ambos costurados
    a um furo. Os furos restantes recebem um colar ate um p-gono novo.
    """
    if p < 3:
        raise InvalidOption("Poligonos de bordo precisam de p >= 3", location=p)
    handles, crosscaps = (sig.genus, 0) if sig.orientable else (0, sig.genus)
    holes = sig.boundary_count + handles + crosscaps
    if holes == 0:
        return VertexBlock(octahedron(), ())

    base, rims = punch_holes(octahedron(), holes)
    builder = SurfaceBuilder()
    builder.add(base)
    cycles: List[Cycle] = []
    boundary_rims = rims[: sig.boundary_count]
    handle_rims = rims[sig.boundary_count : sig.boundary_count + handles]
    crosscap_rims = rims[sig.boundary_count + handles :]
    for rim in boundary_rims:
        ring = builder.fresh(p)
        builder.zip(rim, ring)
        cycles.append(tuple(ring))
    for rim in handle_rims:
        torus, (torus_rim,) = punch_holes(torus_grid(3, 3), 1)
        offset, _ = builder.add(torus)
        builder.zip(rim, [offset + v for v in reversed(torus_rim)])
    for rim in crosscap_rims:
        offset, _ = builder.add(mobius_strip())
        builder.zip(rim, [offset + v for v in _MOBIUS_RIM])
    block = VertexBlock(builder.build(), tuple(cycles))
    logger.debug(
        "Bloco %s: %d vertices, %d triangulos",
        sig.to_dict(),
        block.mesh.vertex_count,
        len(block.mesh.triangles),
    )
    return block


def tube_ring_values(lo: Rational, hi: Rational, rings: int) -> List[Fraction]:
    """Valores dos aneis de um tubo: estritamente entre ``lo`` e ``hi``, crescentes.

    Raises
    ------
    InvalidInterval
        Se ``lo >= hi`` ou ``rings < 2``.
    """
    low, high = to_fraction(lo), to_fraction(hi)
    if not low < high:
        raise InvalidInterval(f"Tubo exige lo < hi (recebido {low}, {high})", location=(low, high))
    if rings < 2:
        raise InvalidInterval("Tubo exige pelo menos 2 aneis", location=rings)
    return [low + (high - low) * (j + 1) / (rings + 1) for j in range(rings)]


def tube_triangles(rings: Sequence[Sequence[int]]) -> List[Triangle]:
    """Faixas entre aneis consecutivos.

    O bordo induzido e ``reversed(rings[0])`` e ``rings[-1]``.
    """
    triangles: List[Triangle] = []
    for lower, upper in zip(rings, rings[1:]):
        triangles.extend(zipper(lower, upper))
    return triangles


@dataclass(frozen=True)
class EdgeTube:
    mesh: SimplicialSurface
    field: ScalarField
    rings: Tuple[Cycle, ...]


def build_edge_tube(p: int, rings: int, lo: Rational, hi: Rational) -> EdgeTube:
    """Anel de ``rings`` circulos de ``p`` vertices com campo crescente anel a anel."""
    if p < 3:
        raise InvalidOption("Aneis precisam de p >= 3", location=p)
    values = tube_ring_values(lo, hi, rings)
    ring_ids = tuple(tuple(range(j * p, (j + 1) * p)) for j in range(rings))
    mesh = SimplicialSurface(rings * p, tuple(tube_triangles(ring_ids)))
    field_values = tuple(values[v // p] for v in range(rings * p))
    return EdgeTube(mesh, ScalarField(field_values), ring_ids)
