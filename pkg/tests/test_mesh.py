"""Testes para o modulo topology.mesh."""

from fractions import Fraction

import pytest

from topology.common import (
    DegenerateTriangle,
    DisconnectedMesh,
    DuplicateTriangle,
    InvalidSignature,
    NonManifoldEdge,
    NonManifoldVertex,
    UnusedVertex,
)
from topology.construct import punch_holes
from topology.field import ScalarField
from topology.mesh import (
    ANNULUS,
    SimplicialSurface,
    SurfaceSignature,
    boundary_components,
    connected_components,
    directed_edges,
    euler_characteristic,
    orientability,
    signature,
    subdivide,
    subdivide_field,
    submesh,
    validate_surface,
)
from topology.shapes import (
    mobius_strip,
    octahedron,
    single_triangle,
    square_annulus,
    torus_grid,
)


class TestValidateSurface:
    """Testes para validate_surface."""

    @pytest.mark.parametrize(
        "mesh",
        [octahedron(), torus_grid(), mobius_strip(), square_annulus(), single_triangle()],
    )
    def test_canonical_shapes_are_valid(self, mesh: SimplicialSurface) -> None:
        """Testa que as formas canonicas sao superficies validas."""
        report = validate_surface(mesh)
        assert report.ok
        assert report.to_dict() == {"valid": True, "violations": []}

    def test_non_manifold_edge(self) -> None:
        """Testa aresta compartilhada por tres triangulos."""
        mesh = SimplicialSurface(5, ((0, 1, 2), (0, 1, 3), (0, 1, 4)))
        report = validate_surface(mesh)
        assert not report.ok
        edge_errors = [v for v in report.violations if isinstance(v, NonManifoldEdge)]
        assert edge_errors[0].location == (0, 1)

    def test_non_manifold_vertex(self) -> None:
        """Testa dois leques unidos por um unico vertice (gravata borboleta)."""
        mesh = SimplicialSurface(5, ((0, 1, 2), (0, 3, 4)))
        report = validate_surface(mesh)
        assert [type(v) for v in report.violations] == [NonManifoldVertex]
        assert report.violations[0].location == 0

    def test_degenerate_and_duplicate(self) -> None:
        """Testa triangulo degenerado e triangulo repetido."""
        mesh = SimplicialSurface(3, ((0, 1, 2), (2, 1, 0), (0, 0, 1)))
        kinds = {type(v) for v in validate_surface(mesh).violations}
        assert DuplicateTriangle in kinds
        assert DegenerateTriangle in kinds

    def test_unused_vertex(self) -> None:
        """Testa vertice sem triangulos."""
        mesh = SimplicialSurface(4, ((0, 1, 2),))
        report = validate_surface(mesh)
        assert isinstance(report.violations[0], UnusedVertex)
        with pytest.raises(UnusedVertex):
            report.raise_for_violations()


class TestSignature:
    """Testes para euler_characteristic, orientability e signature."""

    def test_octahedron_is_sphere(self) -> None:
        """Testa a esfera."""
        assert euler_characteristic(octahedron()) == 2
        assert signature(octahedron()).to_dict() == {
            "orientable": True,
            "genus": 0,
            "boundary": 0,
            "chi": 2,
        }

    def test_torus(self) -> None:
        """Testa o toro em grade."""
        sig = signature(torus_grid(4, 5))
        assert (sig.orientable, sig.genus, sig.boundary_count, sig.euler_char) == (True, 1, 0, 0)

    def test_mobius_strip(self) -> None:
        """Testa a faixa de Mobius."""
        assert not orientability(mobius_strip())
        assert signature(mobius_strip()).to_dict() == {
            "orientable": False,
            "crosscaps": 1,
            "boundary": 1,
            "chi": 0,
        }

    def test_annulus(self) -> None:
        """Testa o anel quadrado."""
        assert signature(square_annulus()) == ANNULUS
        assert signature(square_annulus()).is_annulus

    def test_punched_sphere(self) -> None:
        """Testa esferas furadas."""
        for holes in range(4):
            sig = signature(punch_holes(octahedron(), holes)[0])
            assert (sig.genus, sig.boundary_count) == (0, holes)

    def test_consistent_orientation(self) -> None:
        """Testa que a orientacao devolvida atravessa cada aresta interior nos dois sentidos."""
        mesh = torus_grid()
        result = orientability(mesh)
        assert result.orientable
        directed = [edge for triangle in result.triangles for edge in directed_edges(triangle)]
        assert len(set(directed)) == len(directed)

    def test_disconnected_rejected(self) -> None:
        """Testa que assinatura exige malha conexa."""
        mesh = SimplicialSurface(6, ((0, 1, 2), (3, 4, 5)))
        with pytest.raises(DisconnectedMesh):
            signature(mesh)

    def test_invalid_signature(self) -> None:
        """Testa assinatura que viola a classificacao."""
        with pytest.raises(InvalidSignature):
            SurfaceSignature.checked(True, 0, 0, 1)
        with pytest.raises(InvalidSignature):
            SurfaceSignature.build(False, 0, 0)

    def test_from_euler(self) -> None:
        """Testa resolucao do genero a partir de chi."""
        assert SurfaceSignature.from_euler(True, -2, 0).genus == 2
        assert SurfaceSignature.from_euler(False, 0, 0).genus == 2
        with pytest.raises(InvalidSignature):
            SurfaceSignature.from_euler(True, 1, 0)


class TestBoundary:
    """Testes para boundary_components."""

    def test_closed_mesh(self) -> None:
        """Testa malha fechada sem bordo."""
        assert boundary_components(octahedron()) == []

    def test_single_triangle(self) -> None:
        """Testa bordo orientado de um triangulo."""
        assert boundary_components(single_triangle()) == [(0, 1, 2)]

    def test_annulus_has_two_cycles(self) -> None:
        """Testa os dois ciclos de bordo do anel."""
        cycles = boundary_components(square_annulus())
        assert sorted(sorted(c) for c in cycles) == [[0, 1, 2, 3], [4, 5, 6, 7]]

    def test_mobius_boundary_is_long_cycle(self) -> None:
        """Testa que o bordo da faixa de Mobius percorre os cinco vertices."""
        (cycle,) = boundary_components(mobius_strip())
        assert sorted(cycle) == [0, 1, 2, 3, 4]


class TestSubdivision:
    """Testes para subdivide, subdivide_field, submesh e connected_components."""

    @pytest.mark.parametrize("mesh", [octahedron(), torus_grid(), mobius_strip()])
    def test_subdivision_preserves_signature(self, mesh: SimplicialSurface) -> None:
        """Testa invariancia topologica da subdivisao."""
        refined = subdivide(mesh)
        assert validate_surface(refined).ok
        assert len(refined.triangles) == 4 * len(mesh.triangles)
        assert signature(refined) == signature(mesh)

    def test_subdivide_field_midpoints(self) -> None:
        """Testa valores exatos nos pontos medios."""
        mesh = single_triangle()
        field_ = subdivide_field(mesh, ScalarField.from_values([0, 1, 2]))
        assert list(field_) == [0, 1, 2, Fraction(1, 2), 1, Fraction(3, 2)]

    def test_components_and_submesh(self) -> None:
        """Testa separacao de duas componentes e renumeracao."""
        mesh = SimplicialSurface(6, ((3, 4, 5), (0, 1, 2)))
        components = connected_components(mesh)
        assert components == [(0,), (1,)]
        piece, relabel = submesh(mesh, components[0])
        assert piece.triangles == ((0, 1, 2),)
        assert relabel == {3: 0, 4: 1, 5: 2}
