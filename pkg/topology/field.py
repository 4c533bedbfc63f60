"""Campos escalares exatos (racionais) definidos nos vertices de uma malha."""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Mapping, Union

from .common import FieldMismatch, FormatError

Rational = Union[int, str, Fraction]

_RATIONAL_RE = re.compile(r"^(-?\d+)(?:/(\d+))?$")


def parse_rational(text: str) -> Fraction:
    """Interpreta ``"p"`` ou ``"p/q"`` (q > 0) como fracao exata.

    Parameters
    ----------
    text : str
        Texto com um inteiro decimal ou uma razao ``p/q``.

    Returns
    -------
    Fraction
        Valor reduzido na forma canonica.

    Raises
    ------
    FormatError
        Se o texto nao for um racional valido ou se ``q`` for zero.
    """
    match = _RATIONAL_RE.match(text.strip())
    if not match:
        raise FormatError(f"Valor racional invalido: {text!r}")
    numerator, denominator = match.group(1), match.group(2)
    if denominator is None:
        return Fraction(int(numerator))
    if int(denominator) == 0:
        raise FormatError(f"Denominador zero em {text!r}")
    return Fraction(int(numerator), int(denominator))


def format_rational(value: Fraction) -> str:
    """Formata como inteiro quando o denominador e 1, senao ``p/q``."""
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def to_fraction(value: Rational) -> Fraction:
    """Converte int, str ou Fraction; floats sao recusados."""
    if isinstance(value, bool) or isinstance(value, float):
        raise TypeError("Campos escalares aceitam apenas valores exatos")
    if isinstance(value, str):
        return parse_rational(value)
    return Fraction(value)


@dataclass(frozen=True)
class ScalarField:
    """Valor racional exato por vertice, interpolado linearmente nos triangulos."""

    values: tuple[Fraction, ...]

    @classmethod
    def from_values(cls, values: Iterable[Rational]) -> "ScalarField":
        return cls(tuple(to_fraction(value) for value in values))

    @classmethod
    def from_mapping(cls, values: Mapping[int, Rational], vertex_count: int) -> "ScalarField":
        missing = [v for v in range(vertex_count) if v not in values]
        if missing:
            raise FieldMismatch("Campo sem valor para vertices", location=tuple(missing))
        return cls(tuple(to_fraction(values[v]) for v in range(vertex_count)))

    @classmethod
    def constant(cls, value: Rational, vertex_count: int) -> "ScalarField":
        return cls((to_fraction(value),) * vertex_count)

    def __len__(self) -> int:
        return len(self.values)

    def __getitem__(self, vertex: int) -> Fraction:
        return self.values[vertex]

    def __iter__(self) -> Iterator[Fraction]:
        return iter(self.values)

    def distinct_values(self) -> list[Fraction]:
        """Valores distintos em ordem crescente (candidatos a valores criticos)."""
        return sorted(set(self.values))

    def check_against(self, vertex_count: int) -> None:
        """Garante que o campo cobre exatamente ``vertex_count`` vertices."""
        if len(self.values) != vertex_count:
            raise FieldMismatch(
                f"Campo com {len(self.values)} valores para malha com {vertex_count} vertices"
            )

    def with_value(self, vertex: int, value: Rational) -> "ScalarField":
        """Copia do campo com um unico vertice alterado."""
        values = list(self.values)
        values[vertex] = to_fraction(value)
        return ScalarField(tuple(values))
