from pydantic import BaseModel, Field

from ..core.schemas import TextReport


class IdentityCheck(TextReport):
    """Outcome of an exhaustive identity scan over group tuples."""

    identity: str
    holds: bool
    checked: int = Field(ge=0)
    witness: tuple[int, ...] | None = None
    detail: str | None = None

    def __bool__(self) -> bool:
        return self.holds


class CochainSummary(BaseModel):
    degree: int = Field(ge=3, le=4)
    N: int = Field(ge=1)
    group_order: int = Field(ge=1)
    nonzero_entries: int = Field(ge=0)
    normalized: bool
