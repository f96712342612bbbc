from pathlib import Path

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from ..core.config import EngineOption
from .moves import MoveKind

ACTIONS = {
    "validate": (None,),
    "orient": (None,),
    "moves": ("list", "apply", "walk"),
    "invariant": (None,),
    "cocycle": ("check", "coboundary"),
    "data": ("build", "verify"),
    "homs": (None,),
    "version": (None,),
}


class CommandSpec(BaseModel):
    """One fully validated command line."""

    model_config = ConfigDict(extra="forbid", frozen=True)

    command: str
    action: str | None = None
    paths: tuple[Path, ...] = ()
    group: str | None = None
    cocycle: Path | None = None
    cochain3: Path | None = None
    data: Path | None = None
    engine: EngineOption | None = None
    workers: int | None = Field(default=None, ge=1)
    budget: int | None = Field(default=None, gt=0)
    steps: int = Field(default=1, ge=0)
    max_vertices: int | None = Field(default=None, ge=6)
    kind: MoveKind | None = None
    support: tuple[int, ...] = ()
    modulus: int | None = Field(default=None, ge=1)
    samples: int | None = Field(default=None, gt=0)
    hexagon: bool | None = None
    averaged: bool = False
    literal: bool = False
    seed: int = 0
    output: Path | None = None
    log_level: str | None = None

    @field_validator("log_level")
    @classmethod
    def _known_level(cls, v: str | None) -> str | None:
        if v is None:
            return v
        level = v.upper()
        if level not in {"DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"}:
            raise ValueError(f"Unknown log level: {v}")
        return level

    @model_validator(mode="after")
    def _consistent(self) -> "CommandSpec":
        if self.command not in ACTIONS:
            raise ValueError(f"unknown command {self.command!r}")
        if self.action not in ACTIONS[self.command]:
            raise ValueError(f"unknown action {self.action!r} for {self.command}")
        for path in (*self.paths, self.cocycle, self.cochain3, self.data):
            if path is not None and not path.is_file():
                raise ValueError(f"no such file: {path}")
        if self.cocycle is not None and self.cochain3 is not None:
            raise ValueError("--cocycle and --cochain3 are exclusive")
        if self.data is not None and (self.group is not None or self.cocycle is not None or self.cochain3 is not None):
            raise ValueError("--data cannot be combined with a group or cochain")
        if self.command == "invariant" and self.data is None and self.group is None:
            raise ValueError("invariant needs --group or --data")
        if self.command in ("cocycle", "data") and self.action != "verify" and self.group is None:
            raise ValueError(f"{self.command} {self.action} needs --group")
        if self.command == "cocycle" and self.action == "check" and self.cocycle is None:
            raise ValueError("cocycle check needs --cocycle")
        if self.command == "cocycle" and self.action == "coboundary":
            if self.cochain3 is None and self.modulus is None:
                raise ValueError("cocycle coboundary needs --cochain3 or --random N")
        if self.command == "moves" and self.action == "apply":
            if self.kind is None or len(self.support) != self.kind.support_size:
                raise ValueError("moves apply needs --kind and a support of matching size")
        return self
