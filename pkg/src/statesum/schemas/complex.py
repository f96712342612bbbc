from typing import Annotated

from pydantic import Field, model_validator

from ..core.schemas import TextReport

Simplex = tuple[int, ...]


class ValidationReport(TextReport):
    is_closed_pseudomanifold: bool
    is_connected: bool
    offending_tetrahedra: list[tuple[Simplex, int]] = Field(default_factory=list)
    notes: str = ""

    @model_validator(mode="after")
    def _closed_iff_no_offenders(self) -> "ValidationReport":
        if self.is_closed_pseudomanifold != (not self.offending_tetrahedra):
            raise ValueError("is_closed_pseudomanifold must be true exactly when no tetrahedron is offending")
        return self


class FaceVector(TextReport):
    vertices: Annotated[int, Field(ge=0)]
    edges: Annotated[int, Field(ge=0)]
    triangles: Annotated[int, Field(ge=0)]
    tetrahedra: Annotated[int, Field(ge=0)]
    facets: Annotated[int, Field(ge=0)]


class OrientationReport(TextReport):
    reference: int
    reference_sign: int
    epsilon: list[tuple[Simplex, int]]
