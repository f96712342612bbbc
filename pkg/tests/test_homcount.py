"""Edge-path presentations and homomorphism counts."""

import time

import pytest
from pydantic import ValidationError

from src.scripts.fuzz_pachner import fuzz
from src.statesum.algebra.cocycle import trivial_cocycle
from src.statesum.core.exceptions.complex_exceptions import DisconnectedComplexError
from src.statesum.core.exceptions.engine_exceptions import BudgetExceededError
from src.statesum.engine.invariant import invariant_group_fast
from src.statesum.schemas.homcount import GroupPresentation, HomCountReport
from src.statesum.topology.complex import Triangulation4, orient, relabel
from src.statesum.topology.homcount import count_homs, presentation
from src.statesum.topology.pachner import random_walk
from tests.helpers.generators import random_permutation, two_spheres

COMMUTATOR = ((0, 1), (1, 1), (0, -1), (1, -1))


class TestPresentation:
    """Test the edge-path presentation."""

    def test_sphere(self, sphere):
        """Test generator and relator counts on the boundary of the 5-simplex."""
        P = presentation(sphere.base)
        assert P.generator_count == 10
        assert len(P.relators) == 20
        assert all(0 not in edge for edge in P.generator_edges)

    def test_relator_shape(self, sphere):
        """Test that a triangle through the root reads as its single off-tree edge."""
        P = presentation(sphere.base)
        assert ((P.generator_edges.index((1, 2)), 1),) in P.relators

    def test_disconnected(self):
        """Test that a disconnected complex has no presentation."""
        with pytest.raises(DisconnectedComplexError):
            presentation(two_spheres())

    def test_empty(self):
        """Test that the empty complex has no presentation."""
        with pytest.raises(DisconnectedComplexError):
            presentation(Triangulation4(vertex_count=0, facets=()))

    def test_bad_letter(self):
        """Test that letters must name a generator with power +-1."""
        with pytest.raises(ValidationError):
            GroupPresentation(generator_count=1, relators=(((1, 1),),))
        with pytest.raises(ValidationError):
            GroupPresentation(generator_count=1, relators=(((0, 2),),))


class TestCountHoms:
    """Test the homomorphism search."""

    def test_no_generators(self, s3):
        """Test that the trivial presentation has one homomorphism."""
        assert count_homs(GroupPresentation(generator_count=0), s3) == 1

    def test_free_generator(self, s3):
        """Test that a free generator may go anywhere."""
        assert count_homs(GroupPresentation(generator_count=1), s3) == 6

    def test_commuting_pairs(self, s3):
        """Test the commuting pairs of S3: the order times the class number."""
        assert count_homs(GroupPresentation(generator_count=2, relators=(COMMUTATOR,)), s3) == 18

    def test_cube_relation(self, z3, s3):
        """Test the relator x^3."""
        P = GroupPresentation(generator_count=1, relators=(((0, 1),) * 3,))
        assert count_homs(P, z3) == 3
        assert count_homs(P, s3) == 3

    @pytest.mark.parametrize("spec", ["z2", "z3", "s3"])
    def test_sphere_is_simply_connected(self, spec, sphere, request):
        """Test that the sphere has only the trivial homomorphism."""
        assert count_homs(presentation(sphere.base), request.getfixturevalue(spec)) == 1

    def test_budget(self, s3, sphere):
        """Test that a small budget stops the search."""
        with pytest.raises(BudgetExceededError):
            count_homs(presentation(sphere.base), s3, budget=5)

    def test_relabel_invariance(self, s3, sphere):
        """Test that the count does not depend on the vertex numbering."""
        T = relabel(sphere.base, random_permutation(6))
        assert count_homs(presentation(T), s3) == 1


class TestAgainstInvariant:
    """Test that the untwisted invariant counts homomorphisms."""

    def test_walks(self, z2, s3, sphere, seed):
        """Test |G| times the untwisted invariant against the count after a walk."""
        T, _ = random_walk(sphere.base, 3, seed=seed, max_vertices=8)
        for group in (z2, s3):
            value = invariant_group_fast(orient(T), group, trivial_cocycle(group))
            count = count_homs(presentation(T), group)
            assert value * group.order == count

    def test_report_text(self, z2):
        """Test the report rendering."""
        report = HomCountReport(
            group=z2.name, generators=10, relators=20, homomorphisms=1, invariant="1/2 [N=1]", consistent=True
        )
        assert "homomorphisms: 1" in report.to_text()

    @pytest.mark.slow
    def test_fuzz_script(self, z2):
        """Test a short fuzzing run."""
        assert fuzz([z2], walks=2, steps=2, coboundaries=1, seed=3, max_vertices=8) == []

    @pytest.mark.slow
    def test_fuzz_full_run(self, z2, z3, s3):
        """Test fifty walks of six moves for three groups and six cocycles within ten minutes."""
        start = time.perf_counter()
        assert fuzz([z2, z3, s3], walks=50, steps=6, coboundaries=5, seed=0, max_vertices=10) == []
        assert time.perf_counter() - start < 600
