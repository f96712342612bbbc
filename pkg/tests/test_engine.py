"""Invariant engines: the group fast path, the generic contraction and the brute-force oracle."""

from fractions import Fraction
from functools import reduce
from random import Random

import numpy as np
import pytest

import src.statesum.engine.invariant as engine_module
from src.statesum.algebra.cocycle import FourCochain, trivial_cocycle
from src.statesum.algebra.cyclotomic import Cyclotomic
from src.statesum.algebra.groups import cyclic_group
from src.statesum.category.catdata import (
    IN_SLOTS,
    SLOT_ORDER,
    FaceLabel,
    SimpleObject,
    SphericalData,
    TableTensors,
    from_group_cocycle,
)
from src.statesum.core.config import EngineOption
from src.statesum.core.exceptions.algebra_exceptions import CocycleError
from src.statesum.core.exceptions.complex_exceptions import DisconnectedComplexError, NotClosedError
from src.statesum.core.exceptions.engine_exceptions import BudgetExceededError, DataShapeError
from src.statesum.engine.invariant import (
    FlatnessTables,
    evaluate,
    flat_colouring_blocks,
    invariant,
    invariant_group_fast,
    invariants_group_fast,
    phase_packs,
    per_labelling_phases,
)
from src.statesum.engine.labelling import EdgeSearch, enumerate_labellings, spanning_edge_order
from src.statesum.engine.network import contract
from src.statesum.engine.oracle import flat_colourings, oracle_invariant
from src.statesum.engine.tensors import SlotRole, contract_network, labelling_weight, simplex_tensor
from src.statesum.topology.complex import OrientedTriangulation, Triangulation4, omit, orient, relabel
from src.statesum.topology.pachner import random_walk
from tests.helpers.generators import random_coboundary, random_permutation, two_spheres


def cup_power(group) -> FourCochain:
    """The fourth cup power of the sign character of Z/2."""
    return FourCochain(group=group, N=2, entries={(1, 1, 1, 1): 1})


def rank_one_data(object_dim: int = 1) -> SphericalData:
    """One object with a two-dimensional 2Hom space; every partition tensor is (1, 1) on its in-slots and (1, 2) on
    its out-slots."""
    one = Cyclotomic.one(1)
    inward = np.array([1, 1], dtype=object)
    outward = np.array([1, 2], dtype=object)
    tables = {}
    for sign in (1, -1):
        factors = [inward] * IN_SLOTS[sign] + [outward] * (5 - IN_SLOTS[sign])
        tables[(sign, (0,) * 20)] = reduce(np.multiply.outer, factors)
    return SphericalData(
        N=1,
        objects=(SimpleObject(dim=Cyclotomic.from_rational(object_dim, 1), dual=0),),
        triangle_labels={(0, 0, 0): (FaceLabel(id=0, dim=one),)},
        twohom_dims={(0,) * 10: 2},
        tensors=TableTensors(tables),
        name="rank-one",
    )


class TestLabellingSearch:
    """Test the edge colouring search."""

    def test_spanning_order_covers_edges(self, sphere):
        """Test that the search order lists every edge once, tree edges first per vertex."""
        order = spanning_edge_order(range(6), sphere.base.edges)
        assert sorted(order) == list(sphere.base.edges)
        assert order[:3] == [(0, 1), (0, 2), (1, 2)]

    @pytest.mark.parametrize("spec, expected", [("z2", 32), ("z3", 243), ("s3", 7776)])
    def test_flat_colouring_counts(self, sphere, spec, expected, request):
        """Test that the sphere has |G|^5 flat colourings."""
        group = request.getfixturevalue(spec)
        search = EdgeSearch.for_complex(sphere.base, FlatnessTables(group))
        assert sum(1 for _ in search.colourings()) == expected

    def test_colourings_are_flat(self, sphere, s3):
        """Test that every produced colouring satisfies flatness on every triangle."""
        search = EdgeSearch.for_complex(sphere.base, FlatnessTables(s3))
        for colouring in list(search.colourings())[:200]:
            labels = dict(zip(search.edges, colouring, strict=True))
            for i, j, k in sphere.base.triangles:
                assert s3.mul(labels[(i, j)], labels[(j, k)]) == labels[(i, k)]

    def test_prefix_partitions(self, sphere, z3):
        """Test that the first-label prefixes partition the colourings."""
        search = EdgeSearch.for_complex(sphere.base, FlatnessTables(z3))
        chunks = [sum(1 for _ in search.colourings((x,))) for x in search.first_choices()]
        assert sum(chunks) == 243
        assert len(chunks) == 3

    def test_sample_is_flat(self, sphere, s3, seed):
        """Test that a sampled colouring is one of the enumerated ones."""
        search = EdgeSearch.for_complex(sphere.base, FlatnessTables(s3))
        sample = search.sample(Random(seed))
        assert sample is not None
        assert sample in set(search.colourings())

    def test_labellings_carry_faces(self, sphere, z2):
        """Test that group labellings have exactly one label per triangle."""
        data = from_group_cocycle(z2, trivial_cocycle(z2))
        labellings = list(enumerate_labellings(sphere.base, data))
        assert len(labellings) == 32
        assert all(set(lab.face_labels.values()) == {0} for lab in labellings)

    @pytest.mark.parametrize("spec", ["z2", "s3"])
    def test_blocks_match_colourings(self, sphere, spec, request):
        """Test that the blocks hold exactly the colourings of the depth-first search."""
        group = request.getfixturevalue(spec)
        tables = FlatnessTables(group)
        search = EdgeSearch.for_complex(sphere.base, tables)
        rows = [tuple(row) for block in flat_colouring_blocks(search, tables) for row in block.T.tolist()]
        assert len(rows) == group.order**5
        assert sorted(rows) == list(search.colourings())

    def test_blocks_respect_size(self, sphere, z3, seed):
        """Test that a small block size splits the frontier without losing colourings."""
        T, _ = random_walk(sphere.base, 3, seed=seed, max_vertices=8)
        tables = FlatnessTables(z3)
        search = EdgeSearch.for_complex(T, tables)
        blocks = list(flat_colouring_blocks(search, tables, prefix=(1,), block_rows=7))
        assert all(block.shape[0] == len(search.edges) for block in blocks)
        assert all(0 < block.shape[1] <= 7 for block in blocks)
        rows = sorted(tuple(row) for block in blocks for row in block.T.tolist())
        assert rows == list(search.colourings((1,)))

    def test_blocks_refuse_bad_prefix(self, sphere, z3):
        """Test that a prefix breaking flatness on triangle (012) yields nothing."""
        tables = FlatnessTables(z3)
        search = EdgeSearch.for_complex(sphere.base, tables)
        assert search.edges[:3] == [(0, 1), (0, 2), (1, 2)]
        assert list(flat_colouring_blocks(search, tables, prefix=(1, 0, 0))) == []
        assert sum(b.shape[1] for b in flat_colouring_blocks(search, tables, prefix=(1, 0, 2))) == 3**3


class TestNetwork:
    """Test tensor contraction."""

    def test_matrix_trace(self):
        """Test a two-tensor closed network."""
        a = np.array([[1, 2], [3, 4]], dtype=object)
        b = np.array([[5, 6], [7, 8]], dtype=object)
        value = contract([(a, ("i", "j")), (b, ("j", "i"))])
        assert value[()] == 1 * 5 + 2 * 7 + 3 * 6 + 4 * 8

    def test_open_index_order(self):
        """Test that open indices come back in the requested order."""
        a = np.arange(6, dtype=object).reshape(2, 3)
        result = contract([(a, ("i", "j"))], open_indices=("j", "i"))
        assert result.shape == (3, 2)

    def test_dangling_index(self):
        """Test that an unmatched index in a closed network is refused."""
        a = np.ones((2, 2), dtype=object)
        with pytest.raises(NotClosedError):
            contract([(a, ("i", "j")), (a, ("j", "k"))])

    def test_extent_mismatch(self):
        """Test that joined indices must have the same extent."""
        with pytest.raises(DataShapeError):
            contract([(np.ones((2,), dtype=object), ("i",)), (np.ones((3,), dtype=object), ("i",))])

    def test_cyclotomic_entries(self):
        """Test contraction over exact field entries."""
        z = Cyclotomic.root(3, 1)
        a = np.array([z, z], dtype=object)
        value = contract([(a, ("i",)), (a, ("i",))])[()]
        assert value == 2 * Cyclotomic.root(3, 2)


class TestSphereBaseline:
    """Test the invariant of the 4-sphere."""

    @pytest.mark.parametrize("order", [2, 3, 4])
    def test_cyclic(self, sphere, order):
        """Test 1/|G| for cyclic groups on the fast path."""
        group = cyclic_group(order)
        assert invariant_group_fast(sphere, group, trivial_cocycle(group)) == Fraction(1, order)

    def test_canonical_print(self, sphere, z2):
        """Test the printed value for Z/2."""
        assert invariant_group_fast(sphere, z2, trivial_cocycle(z2)).format_canonical() == "1/2 [N=1]"

    def test_symmetric(self, sphere, s3):
        """Test 1/6 for S3."""
        assert invariant_group_fast(sphere, s3, trivial_cocycle(s3)) == Fraction(1, 6)

    @pytest.mark.parametrize("spec", ["z2", "z3", pytest.param("s3", marks=pytest.mark.slow)])
    def test_generic_agrees(self, sphere, spec, request):
        """Test that contracting the tabulated data gives the same value."""
        group = request.getfixturevalue(spec)
        pi = trivial_cocycle(group)
        assert invariant(sphere, from_group_cocycle(group, pi)) == invariant_group_fast(sphere, group, pi)

    def test_oracle_agrees(self, sphere, z2):
        """Test the brute-force oracle over all 2^15 edge colourings."""
        assert sum(1 for _ in flat_colourings(sphere, z2)) == 32
        assert oracle_invariant(sphere, z2, trivial_cocycle(z2)) == Fraction(1, 2)

    def test_oracle_budget(self, sphere, z3):
        """Test that the oracle refuses a colouring space above its budget."""
        with pytest.raises(BudgetExceededError):
            oracle_invariant(sphere, z3, trivial_cocycle(z3), budget=2**10)

    def test_nontrivial_cocycle(self, sphere, z2):
        """Test that the cup power cocycle still gives 1/2 on the sphere with every engine."""
        pi = cup_power(z2)
        for engine in EngineOption:
            assert evaluate(sphere, z2, pi, engine=engine) == Fraction(1, 2)

    def test_coboundary(self, sphere, s3):
        """Test that a coboundary gives the trivial value."""
        pi = random_coboundary(s3)
        assert invariant_group_fast(sphere, s3, pi) == Fraction(1, 6)

    def test_orientation_reversal(self, sphere, z2):
        """Test that reversing the orientation keeps the value for an order-two cocycle."""
        flipped = OrientedTriangulation(base=sphere.base, epsilon=tuple(-e for e in sphere.epsilon))
        assert invariant_group_fast(flipped, z2, cup_power(z2)) == Fraction(1, 2)

    def test_batched_cocycles(self, sphere, s3, seed):
        """Test that one pass over the colourings scores every cocycle as separate runs would."""
        T, _ = random_walk(sphere.base, 2, seed=seed, max_vertices=8)
        oriented = orient(T)
        cocycles = [trivial_cocycle(s3), random_coboundary(s3), random_coboundary(s3, N=5)]
        values = invariants_group_fast(oriented, s3, cocycles)
        assert values == [invariant_group_fast(oriented, s3, pi) for pi in cocycles]
        assert values == [Fraction(1, 6)] * 3

    def test_batched_empty(self, sphere, z2):
        """Test that no cocycles give no values."""
        assert invariants_group_fast(sphere, z2, []) == []


class TestPhasePacks:
    """Test packing several cocycles into one phase table."""

    def test_untwisted_cocycles_skipped(self, z2):
        """Test that cocycles without entries get no bit field."""
        packs = phase_packs([trivial_cocycle(z2), cup_power(z2), trivial_cocycle(z2, N=3)], facets=6)
        assert [pack.members for pack in packs] == [(1,)]
        assert phase_packs([trivial_cocycle(z2)], facets=6) == []

    def test_fields_spill_into_new_tables(self, s3):
        """Test that fields wider than the int64 budget start a new table."""
        cocycles = [random_coboundary(s3, N=12) for _ in range(3)]
        assert len(phase_packs(cocycles, facets=6)) == 1
        packs = phase_packs(cocycles, facets=2**20)
        assert [pack.members for pack in packs] == [(0, 1), (2,)]
        assert all(sum(pack.widths) <= 62 for pack in packs)

    def test_exponents_match_direct_sums(self, s3):
        """Test that reading the packed sum back gives each cocycle's signed phase sum."""
        cocycles = [random_coboundary(s3, N=N) for N in (2, 5, 12)]
        cocycles.append(FourCochain(group=s3, N=7, entries={(1, 2, 3, 4): 3, (5, 5, 5, 5): 6}))
        rng = np.random.default_rng(5)
        index = rng.integers(0, 6**4, size=(9, 40))
        epsilon = rng.choice([-1, 1], size=9)
        (pack,) = phase_packs(cocycles, facets=9)
        for member, exponents in pack.exponents(epsilon @ pack.table[index]):
            pi = cocycles[member]
            assert np.array_equal(exponents, (epsilon @ pi.dense.ravel()[index]) % pi.N)


class TestTabulatedData:
    """Test the generic engine on data with non-scalar tensors and non-unit dimensions."""

    def test_tensor_extents(self, sphere):
        """Test that every slot carries the 2Hom dimension and the in-slots come first."""
        data = rank_one_data()
        (labelling,) = enumerate_labellings(sphere.base, data)
        for facet, vertices in enumerate(sphere.facets):
            tensor = simplex_tensor(data, sphere, labelling, facet)
            assert tensor.entries.shape == (2,) * 5 == data.slot_dims(tensor.sign, (0,) * 20)
            roles = [slot.role for slot in tensor.slots]
            assert roles.count(SlotRole.IN) == IN_SLOTS[tensor.sign]
            omitted = SLOT_ORDER[tensor.sign]
            assert [slot.tetrahedron for slot in tensor.slots] == [omit(vertices, k) for k in omitted]

    def test_tetrahedra_join_out_to_in(self, sphere):
        """Test that each tetrahedron is an out-slot of one facet and an in-slot of the other."""
        data = rank_one_data()
        (labelling,) = enumerate_labellings(sphere.base, data)
        roles: dict[tuple, list[SlotRole]] = {}
        for facet in range(len(sphere.facets)):
            for slot in simplex_tensor(data, sphere, labelling, facet).slots:
                roles.setdefault(slot.tetrahedron, []).append(slot.role)
        assert len(roles) == 15
        assert all(sorted(r) == [SlotRole.IN, SlotRole.OUT] for r in roles.values())

    def test_rank_one_network(self, sphere):
        """Test that each of the 15 tetrahedra contributes (1, 1) . (1, 2) = 3."""
        data = rank_one_data()
        (labelling,) = enumerate_labellings(sphere.base, data)
        assert contract_network(sphere, labelling, data) == 3**15
        assert labelling_weight(sphere, labelling, data) == 1
        assert invariant(sphere, data).format_canonical() == "14348907 [N=1]"

    def test_object_dimension(self, sphere):
        """Test that an object of dimension 2 divides by 2 on each of the 15 edges."""
        data = rank_one_data(object_dim=2)
        (labelling,) = enumerate_labellings(sphere.base, data)
        assert not data.unit_dimensions
        assert labelling_weight(sphere, labelling, data) == Fraction(1, 2**15)
        assert invariant(sphere, data) == Fraction(3**15, 2**15)

    def test_shape_mismatch(self, sphere):
        """Test that a tensor disagreeing with the 2Hom dimensions is refused."""
        data = rank_one_data()
        broken = SphericalData(
            N=1,
            objects=data.objects,
            triangle_labels=data.triangle_labels,
            twohom_dims={(0,) * 10: 3},
            tensors=data.tensors,
        )
        with pytest.raises(DataShapeError):
            invariant(sphere, broken)


class TestPreconditions:
    """Test refused inputs."""

    def test_not_a_cocycle(self, sphere, z2):
        """Test that a non-cocycle is refused."""
        with pytest.raises(CocycleError):
            invariant_group_fast(sphere, z2, FourCochain(group=z2, N=2, entries={(1, 0, 0, 0): 1}))

    def test_disconnected(self, sphere, z2):
        """Test that a disconnected complex is refused."""
        T = two_spheres()
        oriented = OrientedTriangulation(base=T, epsilon=sphere.epsilon + sphere.epsilon)
        with pytest.raises(DisconnectedComplexError):
            invariant_group_fast(oriented, z2, trivial_cocycle(z2))

    def test_not_closed(self, sphere, z2):
        """Test that a complex with boundary cannot even be oriented."""
        with pytest.raises(NotClosedError):
            orient(Triangulation4(vertex_count=6, facets=sphere.facets[1:]))


class TestInvariance:
    """Test invariance under moves and relabelling."""

    @pytest.mark.parametrize("spec", ["z2", "z3"])
    def test_random_walks(self, sphere, seed, spec, request):
        """Test that seeded walks keep the invariant for trivial, coboundary and cup power cocycles."""
        group = request.getfixturevalue(spec)
        cocycles = [trivial_cocycle(group), random_coboundary(group)]
        if group.order == 2:
            cocycles.append(cup_power(group))
        expected = [invariant_group_fast(sphere, group, pi) for pi in cocycles]
        for offset in range(3):
            T, _ = random_walk(sphere.base, 4, seed=seed + offset, max_vertices=8)
            oriented = orient(T)
            for pi, value in zip(cocycles, expected, strict=True):
                assert invariant_group_fast(oriented, group, pi) == value

    def test_walk_generic_agrees(self, sphere, z2, seed):
        """Test that the generic engine agrees with the fast path after a walk."""
        T, _ = random_walk(sphere.base, 3, seed=seed, max_vertices=7)
        oriented = orient(T)
        pi = cup_power(z2)
        assert invariant(oriented, from_group_cocycle(z2, pi)) == invariant_group_fast(oriented, z2, pi)

    def test_symmetric_walk(self, sphere, s3, seed):
        """Test a single move with S3 and a coboundary."""
        T, _ = random_walk(sphere.base, 1, seed=seed, max_vertices=7)
        pi = random_coboundary(s3)
        assert invariant_group_fast(orient(T), s3, pi) == Fraction(1, 6)

    @pytest.mark.parametrize("spec", ["z2", "z3", "s3"])
    def test_relabelling(self, sphere, spec, request):
        """Test that relabelling vertices keeps the invariant."""
        group = request.getfixturevalue(spec)
        pi = random_coboundary(group)
        expected = invariant_group_fast(sphere, group, pi)
        for _ in range(3):
            T = relabel(sphere.base, random_permutation(6))
            assert invariant_group_fast(orient(T), group, pi) == expected

    @pytest.mark.slow
    @pytest.mark.parametrize("spec", ["z2", "z3", "s3"])
    def test_relabelling_many(self, sphere, spec, request, seed):
        """Test twenty vertex permutations of the sphere and of a walked complex."""
        group = request.getfixturevalue(spec)
        pi = random_coboundary(group)
        T, _ = random_walk(sphere.base, 3, seed=seed, max_vertices=8)
        for base in (sphere.base, T):
            expected = invariant_group_fast(orient(base), group, pi)
            for _ in range(20):
                relabelled = relabel(base, random_permutation(base.vertex_count))
                assert invariant_group_fast(orient(relabelled), group, pi) == expected

    def test_orientation_reference(self, sphere, z2, seed):
        """Test that orienting from any reference facet keeps the invariant."""
        T, _ = random_walk(sphere.base, 3, seed=seed, max_vertices=8)
        pi = cup_power(z2)
        expected = invariant_group_fast(orient(T), z2, pi)
        for reference in range(len(T.facets)):
            assert invariant_group_fast(orient(T, reference=reference), z2, pi) == expected

    def test_reference_sign(self, sphere, z3):
        """Test that a reference with its own sign reproduces the orientation and a coboundary ignores it."""
        pi = random_coboundary(z3)
        for reference, sign in enumerate(sphere.epsilon):
            assert orient(sphere.base, reference=reference, sign=sign).epsilon == sphere.epsilon
            flipped = orient(sphere.base, reference=reference, sign=-sign)
            assert invariant_group_fast(flipped, z3, pi) == Fraction(1, 3)

    def test_relabel_walked_complex(self, sphere, z2, seed):
        """Test relabelling a walked complex with a non-trivial cocycle."""
        T, _ = random_walk(sphere.base, 2, seed=seed, max_vertices=8)
        pi = cup_power(z2)
        expected = invariant_group_fast(orient(T), z2, pi)
        relabelled = relabel(T, random_permutation(T.vertex_count))
        assert invariant_group_fast(orient(relabelled), z2, pi) == expected


class TestTelescoping:
    """Test that coboundaries contribute nothing labelling by labelling."""

    @pytest.mark.parametrize("spec", ["z2", "z3", "s3"])
    def test_sphere(self, sphere, spec, request):
        """Test that every flat colouring of the sphere has phase exponent zero for a coboundary."""
        group = request.getfixturevalue(spec)
        pi = random_coboundary(group)
        assert all(exponent == 0 for _, exponent in per_labelling_phases(sphere, group, pi))

    def test_walked(self, sphere, z3, seed):
        """Test the same after a walk."""
        T, _ = random_walk(sphere.base, 3, seed=seed, max_vertices=8)
        pi = random_coboundary(z3)
        phases = list(per_labelling_phases(orient(T), z3, pi))
        assert len(phases) == 3 ** (T.vertex_count - 1)
        assert all(exponent == 0 for _, exponent in phases)


class TestWorkers:
    """Test the worker split."""

    def test_workers_forwarded(self, sphere, z2, mocker):
        """Test that the worker count reaches the pool helper."""
        spy = mocker.spy(engine_module, "map_reduce")
        invariant_group_fast(sphere, z2, trivial_cocycle(z2), workers=3)
        assert spy.call_args.kwargs["workers"] == 3

    def test_settings_default(self, sphere, z2, mocker):
        """Test that the settings supply the worker count when none is given."""
        mocker.patch("src.statesum.engine.invariant.settings.WORKERS", 1)
        assert invariant_group_fast(sphere, z2, trivial_cocycle(z2)) == Fraction(1, 2)

    def test_output_independent_of_workers(self, sphere, z3):
        """Test that two worker processes give the same value."""
        pi = trivial_cocycle(z3)
        assert invariant_group_fast(sphere, z3, pi, workers=2) == invariant_group_fast(sphere, z3, pi, workers=1)
