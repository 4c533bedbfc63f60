"""Testes para o modulo topology.common."""

import pytest

from topology.common import (
    CobMismatch,
    DecorationError,
    FormatError,
    InvalidOption,
    LoopEdge,
    MeshError,
    NeighborhoodNotFound,
    NonManifoldEdge,
    TopologyError,
    raise_first,
)


class TestTopologyError:
    """Testes para a hierarquia de excecoes."""

    def test_str_with_location(self) -> None:
        """Testa que o local aparece na mensagem."""
        error = NonManifoldEdge("Aresta em 3 triangulos", location=(0, 1))
        assert str(error) == "Aresta em 3 triangulos (local: (0, 1))"

    def test_str_without_location(self) -> None:
        """Testa mensagem sem local."""
        assert str(FormatError("Cabecalho OFF ausente")) == "Cabecalho OFF ausente"

    def test_families(self) -> None:
        """Testa que cada familia herda da excecao base."""
        assert issubclass(NonManifoldEdge, MeshError)
        assert issubclass(LoopEdge, DecorationError)
        assert issubclass(MeshError, TopologyError)
        assert issubclass(InvalidOption, TopologyError)
        assert issubclass(NeighborhoodNotFound, TopologyError)
        assert issubclass(TopologyError, Exception)

    def test_to_dict_sorts_sets(self) -> None:
        """Testa serializacao com conjunto como local."""
        error = CobMismatch("Bordos diferentes do grau", location=frozenset({"b", "a"}))
        assert error.to_dict() == {
            "kind": "CobMismatch",
            "message": "Bordos diferentes do grau",
            "location": ["a", "b"],
        }

    def test_to_dict_tuple_location(self) -> None:
        """Testa que tuplas viram listas."""
        assert NonManifoldEdge("x", location=(2, 5)).to_dict()["location"] == [2, 5]


class TestHelpers:
    """Testes para raise_first."""

    def test_raise_first(self) -> None:
        """Testa que a primeira violacao e levantada."""
        with pytest.raises(LoopEdge, match="primeira"):
            raise_first([LoopEdge("primeira"), MeshError("segunda")])

    def test_raise_first_empty(self) -> None:
        """Testa que lista vazia nao levanta."""
        raise_first([])
