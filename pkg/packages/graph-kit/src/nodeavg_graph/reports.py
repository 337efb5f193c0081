"""Pydantic models for validation reports."""

from __future__ import annotations

from pydantic import BaseModel, Field


class Violation(BaseModel):
    kind: str = Field(description="Violated invariant, e.g. neighbor_count, extra_edge, label")
    message: str = Field(description="Human-readable detail")
    nodes: list[int] = Field(default_factory=list, description="Node ids involved")
    edges: list[int] = Field(default_factory=list, description="Edge ids involved")


class ValidationReport(BaseModel):
    subject: str = Field(description="What was validated")
    checked: int = Field(default=0, description="Number of entities inspected")
    violations: list[Violation] = Field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def add(self, kind: str, message: str, nodes: list[int] | None = None, edges: list[int] | None = None) -> None:
        self.violations.append(Violation(kind=kind, message=message, nodes=nodes or [], edges=edges or []))

    def kinds(self) -> dict[str, int]:
        counts: dict[str, int] = {}
        for v in self.violations:
            counts[v.kind] = counts.get(v.kind, 0) + 1
        return counts


class AlphaSample(BaseModel):
    """Exact independence number of one clique-pair component of a cluster."""

    cluster: int = Field(description="Skeleton node id")
    component: int = Field(description="Index j of the pair (C_j, C_{t/2+j})")
    size: int = Field(description="Number of nodes in the component")
    alpha: int | None = Field(description="Exact independence number, None when the search budget ran out")
    bound: int = Field(description="Structural bound |C| / beta^psi")

    @property
    def within_bound(self) -> bool:
        return self.alpha is not None and self.alpha <= self.bound
