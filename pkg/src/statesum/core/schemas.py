from enum import Enum
from typing import Any

from pydantic import BaseModel, ConfigDict


class VersionInfo(BaseModel):
    name: str
    version: str
    description: str


# -------------- mixins --------------
class FrozenSchema(BaseModel):
    model_config = ConfigDict(frozen=True, extra="forbid")


class TextReport(BaseModel):
    """Reports rendered as ``key: value`` lines in field declaration order."""

    def to_text(self) -> str:
        lines = [f"{name}: {_render(getattr(self, name))}" for name in type(self).model_fields]
        return "\n".join(lines)


def _render(value: Any) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, Enum):
        return str(value.value)
    if isinstance(value, tuple):
        return " ".join(_render(v) for v in value)
    if isinstance(value, list):
        if not value:
            return "none"
        return "; ".join(_render(v) for v in value)
    if value is None:
        return "-"
    return str(value)
