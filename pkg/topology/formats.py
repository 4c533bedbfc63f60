"""Leitura e escrita de malhas OFF e arquivos de campo escalar.

A escrita e bit-exata: as coordenadas lidas sao preservadas como texto e a
saida nunca contem comentarios ou linhas em branco.
"""

from __future__ import annotations

import logging
from pathlib import Path
from typing import List, Optional, Union

from .common import FormatError
from .field import ScalarField, format_rational, parse_rational
from .mesh import Coordinates, SimplicialSurface

logger = logging.getLogger(__name__)

PathLike = Union[str, Path]

ORIGIN: Coordinates = ("0", "0", "0")


def _meaningful_lines(text: str) -> List[tuple[int, str]]:
    lines = []
    for number, raw in enumerate(text.splitlines(), start=1):
        content = raw.split("#", 1)[0].strip()
        if content:
            lines.append((number, content))
    return lines


def parse_off(text: str) -> SimplicialSurface:
    """Interpreta o conteudo de um arquivo OFF de triangulos.

    Raises
    ------
    FormatError
        Cabecalho ausente, contagens invalidas, faces nao triangulares ou
        indices fora do intervalo.
    """
    lines = _meaningful_lines(text)
    if not lines or lines[0][1] != "OFF":
        raise FormatError("Cabecalho OFF ausente", location=lines[0][0] if lines else 1)
    if len(lines) < 2:
        raise FormatError("Linha de contagens ausente", location=2)
    number, counts = lines[1]
    try:
        vertex_total, face_total, _ = (int(tok) for tok in counts.split())
    except ValueError as exc:
        raise FormatError(f"Contagens invalidas: {counts!r}", location=number) from exc
    if vertex_total < 0 or face_total < 0:
        raise FormatError("Contagens negativas", location=number)
    body = lines[2:]
    if len(body) != vertex_total + face_total:
        raise FormatError(
            f"Esperadas {vertex_total + face_total} linhas de dados, encontradas {len(body)}"
        )

    coordinates: List[Coordinates] = []
    for number, content in body[:vertex_total]:
        tokens = content.split()
        if len(tokens) < 3:
            raise FormatError("Vertice com menos de tres coordenadas", location=number)
        for token in tokens[:3]:
            try:
                float(token)
            except ValueError as exc:
                raise FormatError(f"Coordenada invalida: {token!r}", location=number) from exc
        coordinates.append((tokens[0], tokens[1], tokens[2]))

    triangles = []
    for number, content in body[vertex_total:]:
        try:
            values = [int(tok) for tok in content.split()]
        except ValueError as exc:
            raise FormatError(f"Face invalida: {content!r}", location=number) from exc
        if len(values) != 4 or values[0] != 3:
            raise FormatError("Apenas faces triangulares sao suportadas", location=number)
        if any(v < 0 or v >= vertex_total for v in values[1:]):
            raise FormatError("Indice de vertice fora do intervalo", location=number)
        triangles.append(tuple(values[1:]))

    logger.debug("OFF lido: %d vertices, %d triangulos", vertex_total, face_total)
    return SimplicialSurface.from_triangles(triangles, vertex_total, coordinates)


def format_off(mesh: SimplicialSurface) -> str:
    """Serializa a malha em OFF; malhas sem coordenadas recebem a origem."""
    coordinates = mesh.coordinates or (ORIGIN,) * mesh.vertex_count
    out = ["OFF", f"{mesh.vertex_count} {len(mesh.triangles)} 0"]
    out.extend(" ".join(c) for c in coordinates)
    out.extend(f"3 {a} {b} {c}" for a, b, c in mesh.triangles)
    return "\n".join(out) + "\n"


def read_off(path: PathLike) -> SimplicialSurface:
    return parse_off(Path(path).read_text(encoding="utf-8"))


def write_off(mesh: SimplicialSurface, path: PathLike) -> None:
    Path(path).write_text(format_off(mesh), encoding="utf-8", newline="\n")


def parse_field(text: str, vertex_count: Optional[int] = None) -> ScalarField:
    """Interpreta um arquivo de campo: linha ``i`` contem o valor do vertice ``i``.

    Raises
    ------
    FormatError
        Linha vazia no meio do arquivo ou valor nao racional.
    FieldMismatch
        Numero de linhas diferente de ``vertex_count``.
    """
    lines = text.splitlines()
    while lines and not lines[-1].strip():
        lines.pop()
    values = []
    for number, line in enumerate(lines, start=1):
        if not line.strip():
            raise FormatError("Linha vazia no arquivo de campo", location=number)
        try:
            values.append(parse_rational(line))
        except FormatError as exc:
            raise FormatError(exc.message, location=number) from exc
    field = ScalarField(tuple(values))
    if vertex_count is not None:
        field.check_against(vertex_count)
    return field


def format_field(field: ScalarField) -> str:
    return "".join(f"{format_rational(value)}\n" for value in field)


def read_field(path: PathLike, vertex_count: Optional[int] = None) -> ScalarField:
    return parse_field(Path(path).read_text(encoding="utf-8"), vertex_count)


def write_field(field: ScalarField, path: PathLike) -> None:
    Path(path).write_text(format_field(field), encoding="utf-8", newline="\n")

