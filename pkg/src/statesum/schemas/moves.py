from enum import Enum

from pydantic import Field, model_validator

from ..core.schemas import FrozenSchema, TextReport

Simplex = tuple[int, ...]


class MoveKind(str, Enum):
    ONE_FIVE = "1-5"
    TWO_FOUR = "2-4"
    THREE_THREE = "3-3"
    FOUR_TWO = "4-2"
    FIVE_ONE = "5-1"

    @property
    def support_size(self) -> int:
        return SUPPORT_SIZE[self]

    @classmethod
    def for_support(cls, size: int) -> "MoveKind":
        return next(kind for kind, n in SUPPORT_SIZE.items() if n == size)


SUPPORT_SIZE = {
    MoveKind.ONE_FIVE: 5,
    MoveKind.TWO_FOUR: 4,
    MoveKind.THREE_THREE: 3,
    MoveKind.FOUR_TWO: 2,
    MoveKind.FIVE_ONE: 1,
}


class MoveSite(FrozenSchema):
    """A bistellar flip: ``delete`` is the star of ``support``, ``insert`` the complementary facets."""

    kind: MoveKind
    support: Simplex
    delete: tuple[Simplex, ...]
    insert: tuple[Simplex, ...]

    @model_validator(mode="after")
    def _template_shape(self) -> "MoveSite":
        if len(self.support) != self.kind.support_size:
            raise ValueError(f"{self.kind.value} needs a support of {self.kind.support_size} vertices")
        if len(self.delete) + len(self.insert) != 6:
            raise ValueError("a move deletes and inserts six facets in total")
        if len(self.delete) != 6 - self.kind.support_size:
            raise ValueError(f"{self.kind.value} deletes {6 - self.kind.support_size} facets")
        return self

    def describe(self) -> str:
        support = " ".join(str(v) for v in self.support)
        return f"{self.kind.value} {support}"


class WalkReport(TextReport):
    seed: int
    steps_requested: int = Field(ge=0)
    steps_taken: int = Field(ge=0)
    stalled: bool = False
    final_vertices: int
    final_facets: int
    moves: list[str] = Field(default_factory=list)
