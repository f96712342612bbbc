from dataclasses import dataclass
from enum import Enum

import numpy as np

from ..algebra.cyclotomic import Cyclotomic
from ..category.catdata import IN_SLOTS, SIMPLEX_EDGES, SIMPLEX_TRIANGLES, SLOT_ORDER, SimplexKey, SphericalData
from ..core.exceptions.engine_exceptions import InadmissibleLabelError
from ..topology.complex import OrientedTriangulation, Simplex, omit
from .labelling import Labelling
from .network import contract


class SlotRole(str, Enum):
    IN = "in"
    OUT = "out"


@dataclass(frozen=True)
class Slot:
    tetrahedron: Simplex
    role: SlotRole
    dim: int


@dataclass(frozen=True, eq=False)
class PartitionTensor:
    facet: int
    sign: int
    slots: tuple[Slot, ...]
    entries: np.ndarray

    @property
    def indices(self) -> tuple[Simplex, ...]:
        return tuple(slot.tetrahedron for slot in self.slots)


def simplex_key(vertices: Simplex, labelling: Labelling) -> SimplexKey:
    try:
        edges = [labelling.edge_labels[(vertices[i], vertices[j])] for i, j in SIMPLEX_EDGES]
        faces = [labelling.face_labels[(vertices[i], vertices[j], vertices[k])] for i, j, k in SIMPLEX_TRIANGLES]
    except KeyError as e:
        raise InadmissibleLabelError(f"Simplex {vertices} is not fully labelled: missing {e.args[0]}") from e
    return (*edges, *faces)


def simplex_tensor(data: SphericalData, T: OrientedTriangulation, labelling: Labelling, facet: int) -> PartitionTensor:
    vertices = T.facets[facet]
    sign = T.epsilon[facet]
    entries = data.z_tensor(sign, simplex_key(vertices, labelling))
    slots = tuple(
        Slot(
            tetrahedron=omit(vertices, k),
            role=SlotRole.IN if position < IN_SLOTS[sign] else SlotRole.OUT,
            dim=entries.shape[position],
        )
        for position, k in enumerate(SLOT_ORDER[sign])
    )
    return PartitionTensor(facet=facet, sign=sign, slots=slots, entries=entries)


def contract_network(T: OrientedTriangulation, labelling: Labelling, data: SphericalData) -> Cyclotomic:
    """Z(M, T, l): every tetrahedron index joins the out-slot of one facet to the in-slot of the other."""
    tensors = [simplex_tensor(data, T, labelling, facet) for facet in range(len(T.facets))]
    if any(t.entries.size == 0 for t in tensors):
        return Cyclotomic.zero(data.N)
    value = contract([(t.entries, t.indices) for t in tensors])[()]
    return value if isinstance(value, Cyclotomic) else Cyclotomic.from_rational(value, data.N)


def labelling_weight(T: OrientedTriangulation, labelling: Labelling, data: SphericalData) -> Cyclotomic:
    """prod_e dim_q(l(e))^-1 * prod_f dim_q(l(f))."""
    weight = Cyclotomic.one(data.N)
    if data.unit_dimensions:
        return weight
    for edge in T.base.edges:
        weight = weight * data.dim_inverse(labelling.edge_labels[edge])
    for i, j, k in T.base.triangles:
        key = (labelling.edge(i, j), labelling.edge(j, k), labelling.edge(i, k))
        weight = weight * data.face_dim(key, labelling.face(i, j, k))
    return weight
