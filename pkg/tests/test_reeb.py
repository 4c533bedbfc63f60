"""Testes para o modulo topology.reeb."""

import json
import random
from fractions import Fraction
from itertools import pairwise
from typing import Dict, List, Tuple

import pytest

from topology.common import FormatError, InvalidOption, InvalidReebGraph, NonManifoldEdge
from topology.construct import build_vertex_block
from topology.field import ScalarField
from topology.graphs import betti1, graph_isomorphic
from topology.levels import level_components
from topology.mesh import SimplicialSurface, SurfaceSignature, euler_characteristic, subdivide
from topology.reeb import (
    ReebEdge,
    ReebGraph,
    ReebNode,
    compute_reeb_graph,
    critical_neighborhoods,
    sample_levels,
    sampled_reeb_oracle,
)
from topology.shapes import octahedron, square_annulus, torus_grid

Setup = Tuple[SimplicialSurface, ScalarField]

CORPUS: Dict[str, SimplicialSurface] = {
    "octahedron": octahedron(),
    "subdivided_sphere": subdivide(octahedron()),
    "torus": torus_grid(3, 4),
    "genus2": build_vertex_block(SurfaceSignature.build(True, 2, 0)).mesh,
}


FIELDS_PER_MESH = 50
FIELDS_PER_SURFACE = 100


def plateau_field(mesh: SimplicialSurface, seed: int) -> ScalarField:
    """Campo racional aleatorio com muitas colisoes e plateaus em estrelas inteiras."""
    rng = random.Random(seed)
    values: List[Fraction] = [
        Fraction(rng.randint(-4, 4), rng.choice((1, 2))) for _ in range(mesh.vertex_count)
    ]
    for _ in range(rng.randint(1, 3)):
        center = rng.randrange(mesh.vertex_count)
        for v in (center, *mesh.neighbors[center]):
            values[v] = values[center]
    return ScalarField(tuple(values))


def assert_well_formed(graph: ReebGraph) -> None:
    for edge in graph.edges:
        a, b = edge.ends
        assert a != b
        assert graph.node(a).level < graph.node(b).level
        assert edge.interval == (graph.node(a).level, graph.node(b).level)
    assert [n.id for n in graph.nodes] == list(range(len(graph.nodes)))
    assert [(n.level, min(n.cells)) for n in graph.nodes] == sorted(
        (n.level, min(n.cells)) for n in graph.nodes
    )


class TestCanonicalFields:
    """Testes com campos de resultado conhecido."""

    def test_octahedron_height(self, octa: SimplicialSurface, octa_height: ScalarField) -> None:
        """Testa o caminho de dois nos do octaedro."""
        graph = compute_reeb_graph(octa, octa_height)
        assert [n.level for n in graph.nodes] == [-1, 1]
        assert [e.ends for e in graph.edges] == [(0, 1)]
        assert graph.edges[0].interval == (-1, 1)
        assert betti1(graph) == 0

    def test_equator_cells_in_edge(self, octa: SimplicialSurface, octa_height: ScalarField) -> None:
        """Testa que o equador contraido fica na proveniencia da aresta."""
        graph = compute_reeb_graph(octa, octa_height)
        (equator,) = level_components(octa, octa_height, 0)
        assert equator.cells <= graph.edges[0].cells

    def test_constant_field(self, octa: SimplicialSurface) -> None:
        """Testa campo constante: um unico no."""
        graph = compute_reeb_graph(octa, ScalarField.constant(7, 6))
        assert [(n.id, n.level) for n in graph.nodes] == [(0, 7)]
        assert graph.edges == ()

    def test_standing_torus(self, torus_height: Setup) -> None:
        """Testa o toro em pe: minimo, duas selas, maximo e aresta dupla."""
        mesh, field_ = torus_height
        graph = compute_reeb_graph(mesh, field_)
        assert [n.level for n in graph.nodes] == [-40, -20, 20, 40]
        assert sorted(e.ends for e in graph.edges) == [(0, 1), (1, 2), (1, 2), (2, 3)]
        assert betti1(graph) == 1
        assert_well_formed(graph)

    def test_disconnected_mesh(self) -> None:
        """Testa duas esferas disjuntas: dois caminhos."""
        octa = octahedron()
        both = SimplicialSurface(
            12, octa.triangles + tuple((a + 6, b + 6, c + 6) for a, b, c in octa.triangles)
        )
        field_ = ScalarField.from_values([0, 0, 0, 0, 1, -1, 0, 0, 0, 0, 3, -3])
        graph = compute_reeb_graph(both, field_)
        assert sorted(n.level for n in graph.nodes) == [-3, -1, 1, 3]
        assert len(graph.edges) == 2
        assert betti1(graph) == 0

    def test_annulus_with_boundary(self) -> None:
        """Testa malha com bordo: o anel com campo radial e uma unica aresta."""
        mesh = square_annulus()
        field_ = ScalarField.from_values([1, 1, 1, 1, 0, 0, 0, 0])
        graph = compute_reeb_graph(mesh, field_)
        assert [n.level for n in graph.nodes] == [0, 1]
        assert len(graph.edges) == 1

    def test_invalid_mesh(self) -> None:
        """Testa que malhas invalidas sao rejeitadas."""
        mesh = SimplicialSurface(5, ((0, 1, 2), (0, 1, 3), (0, 1, 4)))
        with pytest.raises(NonManifoldEdge):
            compute_reeb_graph(mesh, ScalarField.constant(0, 5))


class TestOracle:
    """Testes de equivalencia com o oraculo amostrado."""

    def test_sample_levels(self) -> None:
        """Testa amostras igualmente espacadas entre valores."""
        samples = sample_levels([Fraction(0), Fraction(1), Fraction(3)], 1)
        assert samples == [0, Fraction(1, 2), 1, 2, 3]
        assert sample_levels([Fraction(2)], 5) == [2]
        assert len(sample_levels([Fraction(0), Fraction(1)], 3)) == 5

    def test_oracle_rejects_zero(self, octa: SimplicialSurface, octa_height: ScalarField) -> None:
        """Testa numero de amostras invalido."""
        with pytest.raises(InvalidOption):
            sampled_reeb_oracle(octa, octa_height, 0)

    @pytest.mark.parametrize("extra", [1, 3, 5])
    def test_canonical_fixtures(self, torus_height: Setup, extra: int) -> None:
        """Testa o oraculo no toro em pe."""
        mesh, field_ = torus_height
        graph = compute_reeb_graph(mesh, field_)
        oracle = sampled_reeb_oracle(mesh, field_, extra)
        assert graph_isomorphic(graph, oracle, respect_levels=True)
        assert [n.level for n in oracle.nodes] == [n.level for n in graph.nodes]

    def test_constant_field(self, octa: SimplicialSurface) -> None:
        """Testa o oraculo com campo constante."""
        assert len(sampled_reeb_oracle(octa, ScalarField.constant(1, 6), 4).nodes) == 1

    @pytest.mark.parametrize("name", sorted(CORPUS))
    @pytest.mark.parametrize("seed", range(FIELDS_PER_MESH))
    def test_random_fields(self, name: str, seed: int) -> None:
        """Testa equivalencia com k = 1, 2, 5 em campos com plateaus."""
        mesh = CORPUS[name]
        field_ = plateau_field(mesh, seed)
        graph = compute_reeb_graph(mesh, field_)
        assert_well_formed(graph)
        for extra in (1, 2, 5):
            oracle = sampled_reeb_oracle(mesh, field_, extra)
            assert graph_isomorphic(graph, oracle, respect_levels=True), (name, seed, extra)


class TestProperties:
    """Propriedades estruturais do grafo calculado."""

    @pytest.mark.parametrize("seed", range(FIELDS_PER_SURFACE))
    def test_torus_betti_bound(self, seed: int) -> None:
        """Testa betti1 <= 1 para campos aleatorios no toro."""
        mesh = torus_grid(3, 4)
        assert betti1(compute_reeb_graph(mesh, plateau_field(mesh, seed))) <= 1

    @pytest.mark.parametrize("seed", range(FIELDS_PER_SURFACE))
    def test_genus2_betti_bound(self, seed: int) -> None:
        """Testa betti1 <= 2 na superficie de genero 2."""
        mesh = CORPUS["genus2"]
        assert betti1(compute_reeb_graph(mesh, plateau_field(mesh, seed))) <= 2

    @pytest.mark.parametrize("name", ["octahedron", "subdivided_sphere", "torus"])
    @pytest.mark.parametrize("seed", range(4))
    def test_euler_conservation(self, name: str, seed: int) -> None:
        """Testa que chi da malha e a soma dos chi das vizinhancas criticas."""
        mesh = CORPUS[name]
        field_ = plateau_field(mesh, seed)
        graph = compute_reeb_graph(mesh, field_)
        signatures = critical_neighborhoods(mesh, field_, graph)
        assert all(sig is not None for sig in signatures.values())
        total = sum(sig.euler_char for sig in signatures.values() if sig is not None)
        assert total == euler_characteristic(mesh)

    def test_disk_neighborhoods(self, octa: SimplicialSurface, octa_height: ScalarField) -> None:
        """Testa vizinhancas de extremos: discos."""
        graph = compute_reeb_graph(octa, octa_height)
        signatures = critical_neighborhoods(octa, octa_height, graph)
        assert all(sig is not None and sig.is_disk for sig in signatures.values())


class TestSerialization:
    """Testes para as formas JSON e DOT."""

    def test_json_form(self, torus_height: Setup) -> None:
        """Testa o JSON canonico e a leitura de volta."""
        graph = compute_reeb_graph(*torus_height)
        data = json.loads(graph.to_json())
        assert data["nodes"][0] == {"id": 0, "level": "-40", "critical": True}
        assert {tuple(e["interval"]) for e in data["edges"]} == {
            ("-40", "-20"),
            ("-20", "20"),
            ("20", "40"),
        }
        again = ReebGraph.from_dict(data)
        assert again.to_dict() == graph.to_dict()
        assert again == graph

    def test_rational_levels(self) -> None:
        """Testa niveis fracionarios na forma p/q."""
        graph = ReebGraph(
            (ReebNode(0, Fraction(-1, 2)), ReebNode(1, Fraction(3))),
            (ReebEdge(0, (0, 1), (Fraction(-1, 2), Fraction(3))),),
        )
        assert graph.to_dict()["edges"][0]["interval"] == ["-1/2", "3"]

    def test_dot_form(self, octa: SimplicialSurface, octa_height: ScalarField) -> None:
        """Testa a forma DOT."""
        dot = compute_reeb_graph(octa, octa_height).to_dot()
        assert dot.splitlines() == [
            "graph reeb {",
            '  n0 [label="0@-1"];',
            '  n1 [label="1@1"];',
            '  n0 -- n1 [label="e0"];',
            "}",
        ]

    def test_from_dict_rejects(self) -> None:
        """Testa estrutura invalida."""
        with pytest.raises(FormatError):
            ReebGraph.from_dict({"nodes": [{"id": "x"}], "edges": []})

    def test_invariants_enforced(self) -> None:
        """Testa lacos e intervalos incoerentes."""
        nodes = (ReebNode(0, Fraction(0)), ReebNode(1, Fraction(1)))
        with pytest.raises(InvalidReebGraph):
            ReebGraph(nodes, (ReebEdge(0, (0, 0), (Fraction(0), Fraction(1))),))
        with pytest.raises(InvalidReebGraph):
            ReebGraph(nodes, (ReebEdge(0, (0, 1), (Fraction(0), Fraction(2))),))
        with pytest.raises(InvalidReebGraph):
            ReebGraph(nodes + (ReebNode(1, Fraction(5)),), ())

    def test_chains_are_monotone(self, torus_height: Setup) -> None:
        """Testa que cada aresta liga niveis crescentes."""
        graph = compute_reeb_graph(*torus_height)
        for edge in graph.edges:
            assert all(a < b for a, b in pairwise(edge.interval))
