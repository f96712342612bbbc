from pydantic import Field, model_validator

from ..core.schemas import FrozenSchema, TextReport

Letter = tuple[int, int]


class GroupPresentation(FrozenSchema):
    """Generators are numbered 0..generator_count-1; a letter is (generator, +1 or -1)."""

    generator_count: int = Field(ge=0)
    relators: tuple[tuple[Letter, ...], ...] = ()
    generator_edges: tuple[tuple[int, int], ...] = ()

    @model_validator(mode="after")
    def _letters_in_range(self) -> "GroupPresentation":
        for word in self.relators:
            for generator, power in word:
                if not 0 <= generator < self.generator_count or power not in (1, -1):
                    raise ValueError(f"bad letter ({generator}, {power}) for {self.generator_count} generators")
        if self.generator_edges and len(self.generator_edges) != self.generator_count:
            raise ValueError("generator_edges must name one edge per generator")
        return self


class HomCountReport(TextReport):
    group: str
    generators: int
    relators: int
    homomorphisms: int
    invariant: str | None = None
    consistent: bool | None = None
