"""Triangulacoes canonicas usadas como pecas de construcao e fixtures."""

from __future__ import annotations

from fractions import Fraction
from typing import List

from .field import ScalarField
from .mesh import SimplicialSurface, Triangle

_OCTAHEDRON_COORDS = (
    ("1", "0", "0"),
    ("-1", "0", "0"),
    ("0", "1", "0"),
    ("0", "-1", "0"),
    ("0", "0", "1"),
    ("0", "0", "-1"),
)

# Orientados para fora: (+x, +y, +z), (+y, -x, +z), ...
_OCTAHEDRON_TRIANGLES = (
    (0, 2, 4),
    (2, 1, 4),
    (1, 3, 4),
    (3, 0, 4),
    (2, 0, 5),
    (1, 2, 5),
    (3, 1, 5),
    (0, 3, 5),
)

# Toro em pe sobre uma grade 8x4: altura = seno (maior) * (3 + cosseno (menor)).
_STANDING_SINE = (0, 7, 10, 7, 0, -7, -10, -7)
_STANDING_RADIUS = (4, 3, 2, 3)


def octahedron() -> SimplicialSurface:
    return SimplicialSurface(6, _OCTAHEDRON_TRIANGLES, _OCTAHEDRON_COORDS)


def coordinate_field(mesh: SimplicialSurface, axis: int = 2) -> ScalarField:
    """Campo dado por uma coordenada lida do OFF (convertida sem arredondamento)."""
    if mesh.coordinates is None:
        raise ValueError("Malha sem coordenadas")
    return ScalarField(tuple(Fraction(coords[axis]) for coords in mesh.coordinates))


def single_triangle() -> SimplicialSurface:
    return SimplicialSurface(3, ((0, 1, 2),))


def torus_grid(rows: int = 3, columns: int = 3) -> SimplicialSurface:
    """Toro plano ``rows x columns``; simplicial para ``rows, columns >= 3``.

    O vertice ``(i, j)`` recebe o id ``i * columns + j``.
    """
    if rows < 3 or columns < 3:
        raise ValueError("A grade do toro precisa de pelo menos 3x3 vertices")

    def vid(i: int, j: int) -> int:
        return (i % rows) * columns + (j % columns)

    triangles: List[Triangle] = []
    for i in range(rows):
        for j in range(columns):
            triangles.append((vid(i, j), vid(i + 1, j), vid(i + 1, j + 1)))
            triangles.append((vid(i, j), vid(i + 1, j + 1), vid(i, j + 1)))
    return SimplicialSurface(rows * columns, tuple(triangles))


def standing_torus() -> tuple[SimplicialSurface, ScalarField]:
    """Toro em pe com campo de altura: minimo, duas selas e maximo."""
    mesh = torus_grid(len(_STANDING_SINE), len(_STANDING_RADIUS))
    values = [s * r for s in _STANDING_SINE for r in _STANDING_RADIUS]
    return mesh, ScalarField.from_values(values)


def mobius_strip() -> SimplicialSurface:
    """Faixa de Mobius com 5 vertices e 5 triangulos ``(i, i+1, i+2)``."""
    return SimplicialSurface(5, tuple((i, (i + 1) % 5, (i + 2) % 5) for i in range(5)))


def square_annulus() -> SimplicialSurface:
    """Anel entre dois quadrados concentricos (externo 0..3, interno 4..7)."""
    triangles: List[Triangle] = []
    for i in range(4):
        o, o_next = i, (i + 1) % 4
        n, n_next = 4 + i, 4 + (i + 1) % 4
        triangles.append((o, o_next, n))
        triangles.append((o_next, n_next, n))
    return SimplicialSurface(8, tuple(triangles))
