"""Data models for algext documents and generator parameters."""

from __future__ import annotations

from typing import Any, Literal

from pydantic import BaseModel, ConfigDict, Field, model_validator

INSTANCE_FORMAT = "algext.instance"
MODULE_FORMAT = "algext.module"
REPORT_FORMAT = "algext.report"


class AlgebraPayload(BaseModel):
    """Algebra part of an instance document; scalars are decimal strings."""

    model_config = ConfigDict(extra="forbid")

    names: list[str] = Field(..., description="Basis element names, in basis order")
    degrees: list[int] = Field(..., description="Degree of each basis element")
    unit: list[str] = Field(..., description="Coordinates of the unit")
    constants: list[tuple[int, int, int, str]] = Field(
        default_factory=list,
        description="Nonzero structure constants (i, j, k, c): e_i * e_j has c at e_k",
    )
    commutative: bool = Field(False, description="Whether commutativity is asserted")


class GroupPayload(BaseModel):
    """Finite group by multiplication table."""

    model_config = ConfigDict(extra="forbid")

    table: list[list[int]] = Field(..., description="table[g][h] is the index of g*h")


class ActionPayload(BaseModel):
    """One square matrix per group element, columns are images of basis elements."""

    model_config = ConfigDict(extra="forbid")

    matrices: list[list[list[str]]] = Field(..., description="Row-major matrices")


class InstanceDocument(BaseModel):
    """An algebra over a base ring with an optional group action."""

    model_config = ConfigDict(extra="forbid")

    format: Literal["algext.instance"] = INSTANCE_FORMAT
    version: Literal[1] = 1
    base: str = Field(..., description="Base ring descriptor: Z, Z/n or Fp")
    algebra: AlgebraPayload
    group: GroupPayload | None = None
    action: ActionPayload | None = None

    @model_validator(mode="after")
    def _group_and_action_together(self) -> InstanceDocument:
        if (self.group is None) != (self.action is None):
            raise ValueError("group and action must be given together")
        return self


class ModuleDocument(BaseModel):
    """A graded module presented by generators and relation columns."""

    model_config = ConfigDict(extra="forbid")

    format: Literal["algext.module"] = MODULE_FORMAT
    version: Literal[1] = 1
    base: str = Field(..., description="Base ring descriptor: Z, Z/n or Fp")
    degrees: list[int] = Field(..., description="Degree of each generator")
    relations: list[list[str]] = Field(
        default_factory=list, description="Relation columns, one entry per generator"
    )


class ReportDocument(BaseModel):
    """Machine-readable result of one command."""

    format: Literal["algext.report"] = REPORT_FORMAT
    version: Literal[1] = 1
    tool_version: str
    command: str
    arguments: dict[str, Any] = Field(default_factory=dict)
    verdicts: dict[str, Any] = Field(default_factory=dict)
    evidence: dict[str, Any] = Field(default_factory=dict)
    timing: float | None = Field(None, description="Elapsed seconds, only with --timing")


class GeneratorParams(BaseModel):
    """Knobs for the seeded random instance generator.

    Equal params (seed included) always produce the same instance.
    """

    model_config = ConfigDict(frozen=True)

    seed: int = Field(0, ge=0, lt=2**64, description="64-bit generator seed")
    max_rank: int = Field(4, ge=1, le=12, description="Largest algebra rank")
    degree_range: tuple[int, int] = Field((-2, 2), description="Inclusive generator degrees")
    base: str | None = Field(None, description="Fixed base ring; random from base_choices if None")
    base_choices: tuple[str, ...] = ("F2", "F3", "Z/4", "Z")
    commutative: bool = True
    group_order: int = Field(0, ge=0, description="Order of the acting group; 0 for none")
    connective: bool = Field(False, description="Only nonnegative degrees")
    coconnective: bool = Field(False, description="Only nonpositive degrees")
    force_graded: bool = Field(False, description="Require a nonzero degree")
    force_negative: bool = Field(False, description="Require a negative degree")
    forbid_graded: bool = Field(False, description="Require every degree to be 0")
    degree_zero_trivial: bool = Field(False, description="Require B_0 to be the base")
    degree_zero_extra: bool = Field(False, description="Require B_0 larger than the base")
    max_attempts: int = Field(200, ge=1, description="Attempts before giving up")
    repair_budget: int = Field(3, ge=0, description="Re-draws of a broken deformation")

    @model_validator(mode="after")
    def _consistent(self) -> GeneratorParams:
        low, high = self.degree_range
        if low > high:
            raise ValueError(f"empty degree range {self.degree_range}")
        if self.force_graded and self.forbid_graded:
            raise ValueError("force_graded and forbid_graded exclude each other")
        if self.force_negative and (self.connective or self.forbid_graded):
            raise ValueError("force_negative needs room for a negative degree")
        if self.degree_zero_trivial and self.degree_zero_extra:
            raise ValueError("degree_zero_trivial and degree_zero_extra exclude each other")
        return self

    def lane(self, **overrides: Any) -> GeneratorParams:
        """Copy with some fields replaced (validated)."""
        return GeneratorParams.model_validate({**self.model_dump(), **overrides})
