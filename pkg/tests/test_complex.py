"""Triangulations: validation, orientation, relabelling and the file format."""

import pytest

from src.statesum.core.exceptions.complex_exceptions import (
    DisconnectedComplexError,
    DuplicateFacetError,
    InvalidPermutationError,
    NonOrientableError,
    NotClosedError,
    RepeatedVertexError,
    TriangulationParseError,
    VertexRangeError,
)
from src.statesum.core.utils.textfile import read_text
from src.statesum.topology.complex import (
    OrientedTriangulation,
    Triangulation4,
    connected_components,
    dump_triangulation,
    induced_sign,
    load_triangulation,
    orient,
    permutation_parity,
    relabel,
    validate,
)
from tests.helpers.generators import random_permutation, two_spheres


class TestConstruction:
    """Test facet normalization and rejection of malformed input."""

    def test_facets_sorted_within(self):
        """Test that facet vertices are stored in increasing order."""
        T = Triangulation4(vertex_count=5, facets=((4, 3, 2, 1, 0),))
        assert T.facets == ((0, 1, 2, 3, 4),)

    def test_repeated_vertex(self):
        """Test that a facet with a repeated vertex is refused."""
        with pytest.raises(RepeatedVertexError):
            Triangulation4(vertex_count=5, facets=((0, 1, 2, 3, 3),))

    def test_duplicate_facet(self):
        """Test that the same facet twice is refused."""
        with pytest.raises(DuplicateFacetError):
            Triangulation4(vertex_count=5, facets=((0, 1, 2, 3, 4), (4, 3, 2, 1, 0)))

    def test_vertex_out_of_range(self):
        """Test that a vertex id beyond the count is refused."""
        with pytest.raises(VertexRangeError):
            Triangulation4(vertex_count=5, facets=((0, 1, 2, 3, 5),))

    def test_unused_vertex(self):
        """Test that every vertex must occur in a facet."""
        with pytest.raises(VertexRangeError, match="Vertex 5"):
            Triangulation4(vertex_count=6, facets=((0, 1, 2, 3, 4),))


class TestValidation:
    """Test the closed pseudomanifold check."""

    def test_sphere(self, sphere):
        """Test that the boundary of the 5-simplex is closed and connected."""
        report = validate(sphere.base)
        assert report.is_closed_pseudomanifold
        assert report.is_connected
        assert report.offending_tetrahedra == []

    def test_face_vector(self, sphere):
        """Test the face counts of the boundary of the 5-simplex."""
        fv = sphere.base.face_vector()
        assert (fv.vertices, fv.edges, fv.triangles, fv.tetrahedra, fv.facets) == (6, 15, 20, 15, 6)

    def test_missing_facet(self, sphere):
        """Test that removing a facet leaves five boundary tetrahedra."""
        T = Triangulation4(vertex_count=6, facets=sphere.facets[1:])
        report = validate(T)
        assert not report.is_closed_pseudomanifold
        assert len(report.offending_tetrahedra) == 5
        assert all(count == 1 for _, count in report.offending_tetrahedra)
        with pytest.raises(NotClosedError):
            orient(T)

    def test_empty(self):
        """Test the empty complex."""
        report = validate(Triangulation4(vertex_count=0, facets=()))
        assert report.is_closed_pseudomanifold
        assert not report.is_connected
        assert "empty complex" in report.notes

    def test_two_components(self):
        """Test that a disjoint union is closed but not connected."""
        T = two_spheres()
        report = validate(T)
        assert report.is_closed_pseudomanifold
        assert not report.is_connected
        with pytest.raises(DisconnectedComplexError):
            orient(T)

    def test_connected_components(self, sphere):
        """Test that each component comes back renumbered."""
        components = connected_components(two_spheres())
        assert components == [sphere.base, sphere.base]

    def test_faces(self, sphere):
        """Test star and face lookups."""
        assert len(sphere.base.star((0, 1))) == 4
        assert sphere.base.has_face((2, 0, 1))
        assert not sphere.base.has_face((0, 6))


class TestOrientation:
    """Test orientation propagation."""

    def test_standard_signs(self, sphere):
        """Test that facet i omitting vertex i gets sign (-1)^i."""
        assert sphere.epsilon == (1, -1, 1, -1, 1, -1)

    def test_coherence(self, sphere):
        """Test that every tetrahedron is induced with opposite signs."""
        for tet, incident in sphere.base.tetrahedron_facets.items():
            assert sum(sphere.induced(i, tet) for i in incident) == 0

    def test_pin_flips(self, sphere):
        """Test that a negative pin flips every sign."""
        pinned = Triangulation4(vertex_count=6, facets=sphere.facets, orientation_pin=(0, -1))
        assert orient(pinned).epsilon == tuple(-e for e in sphere.epsilon)

    def test_explicit_reference(self, sphere):
        """Test orienting from another reference facet."""
        oriented = orient(sphere.base, reference=3, sign=-1)
        assert oriented.epsilon == sphere.epsilon

    def test_incoherent_signs(self, sphere):
        """Test that an incoherent sign vector is refused."""
        with pytest.raises(NonOrientableError):
            OrientedTriangulation(base=sphere.base, epsilon=(1, 1, 1, 1, 1, 1))

    def test_induced_sign(self):
        """Test the alternating boundary sign."""
        assert [induced_sign(1, k) for k in range(5)] == [1, -1, 1, -1, 1]
        assert induced_sign(-1, 1) == 1

    def test_report(self, sphere):
        """Test the orientation report."""
        text = sphere.report().to_text()
        assert "reference: 0" in text
        assert "reference_sign: 1" in text


class TestRelabel:
    """Test vertex relabelling."""

    def test_parity(self):
        """Test permutation parity."""
        assert permutation_parity((0, 1, 2)) == 1
        assert permutation_parity((1, 0, 2)) == -1
        assert permutation_parity((2, 0, 1)) == 1

    def test_relabel_stays_closed(self, sphere):
        """Test that a relabelled sphere is still closed and orientable."""
        T = relabel(sphere.base, random_permutation(6))
        assert validate(T).is_closed_pseudomanifold
        assert len(orient(T).epsilon) == 6

    def test_not_a_permutation(self, sphere):
        """Test that a non-bijection is refused."""
        with pytest.raises(InvalidPermutationError):
            relabel(sphere.base, [0, 0, 1, 2, 3, 4])

    def test_transposition_reverses_orientation_pin(self, sphere):
        """Test that the pin follows the parity of the reference facet's image."""
        T = relabel(sphere.base, [0, 1, 2, 3, 5, 4])
        # facet 0 is (1, 2, 3, 4, 5), whose image (1, 2, 3, 5, 4) is odd
        assert T.orientation_pin == (0, -1)


class TestFiles:
    """Test the triangulation file format."""

    def test_sample_is_the_sphere(self, sphere):
        """Test that the shipped sample is the oriented boundary of the 5-simplex."""
        T = load_triangulation(read_text("docs/samples/s4.tri"))
        assert T == sphere.base
        assert orient(T).epsilon == sphere.epsilon

    def test_dump_then_load(self, sphere):
        """Test that a dumped complex keeps its facets and pin."""
        T = relabel(sphere.base, random_permutation(6))
        loaded = load_triangulation(dump_triangulation(T))
        assert loaded == T
        assert loaded.orientation_pin == T.orientation_pin

    def test_comments_and_blank_lines(self):
        """Test that comments and blank lines are skipped."""
        text = "# header\n\nvertices 5  # count\nsimplex 0 1 2 3 4\n"
        assert load_triangulation(text).facets == ((0, 1, 2, 3, 4),)

    @pytest.mark.parametrize(
        "text, line",
        [
            ("vertices 6\nsimplex 0 1 2 3\n", 2),
            ("simplex 0 1 2 3 4\n", 1),
            ("vertices 6\nfacet 0 1 2 3 4\n", 2),
            ("vertices 6\nsimplex 0 1 2 3 x\n", 2),
            ("vertices 5\nsimplex 0 1 2 3 4\norient 0 2\n", 3),
        ],
    )
    def test_parse_errors_carry_line(self, text, line):
        """Test that parse errors name the offending line."""
        with pytest.raises(TriangulationParseError) as info:
            load_triangulation(text)
        assert info.value.line == line

    def test_missing_header(self):
        """Test that an empty file is refused."""
        with pytest.raises(TriangulationParseError, match="missing"):
            load_triangulation("# nothing\n")

    def test_duplicate_in_file(self):
        """Test that a duplicate facet names both lines."""
        with pytest.raises(DuplicateFacetError, match="line 3"):
            load_triangulation("vertices 5\nsimplex 0 1 2 3 4\nsimplex 4 3 2 1 0\n")
