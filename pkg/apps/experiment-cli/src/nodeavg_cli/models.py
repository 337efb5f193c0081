"""Row and experiment models written to and read from CSV."""

from __future__ import annotations

from fractions import Fraction
from pathlib import Path

from pydantic import BaseModel, ConfigDict, Field

from nodeavg_sim import AlgorithmConfig


class TrialRow(BaseModel):
    """One seeded run, or the aggregate of a run (``kind == "aggregate"``)."""

    model_config = ConfigDict(arbitrary_types_allowed=True)

    kind: str = Field(default="trial", description="'trial' or 'aggregate'")
    graph_id: str = Field(default="", description="Graph file stem or generator description")
    algorithm: str = Field(description="Registered algorithm name")
    seed: int = Field(description="Seed of the run; base seed on aggregate rows")
    n: int = Field(description="Node count")
    m: int = Field(description="Edge count")
    avg_v: Fraction = Field(description="Node-averaged completion time")
    avg_e: Fraction = Field(description="Edge-averaged completion time")
    worst: int = Field(description="Rounds of the run; maximum over trials on aggregate rows")
    exp_v_max: Fraction | None = Field(
        default=None, description="Largest per-node mean of T_v over the trials of the row"
    )
    valid: bool = Field(default=True, description="Validator verdict")
    timed_out: bool = Field(default=False, description="Round cap reached before every output was committed")
    s0_fraction: Fraction | None = Field(default=None, description="|MIS ∩ S(c0)| / |S(c0)| for MIS runs on cluster graphs")
    removal_fraction: Fraction | None = Field(
        default=None, description="Smallest per-iteration fraction of live edges removed, for matchings"
    )
    violations: str = Field(default="", description="Violation kinds, ';'-separated")


class ExperimentSpec(BaseModel):
    """What ``run`` executes: a graph source, an algorithm and a seed range."""

    graph: Path = Field(description="Graph file in the line-oriented v1 format")
    algorithm: AlgorithmConfig = Field(description="Algorithm and its parameters")
    trials: int = Field(default=1, ge=1, description="Seeds base .. base + trials - 1")
    seed: int = Field(default=0, ge=0, description="Base seed")
    max_rounds: int = Field(default=10_000, ge=1, description="Round cap per trial")
    out: Path | None = Field(default=None, description="CSV destination; stdout when unset")

    @property
    def seeds(self) -> range:
        return range(self.seed, self.seed + self.trials)


class SweepRow(BaseModel):
    model_config = ConfigDict(arbitrary_types_allowed=True)

    n: int
    algorithm: str
    trials: int
    avg_v: Fraction
    avg_e: Fraction
    worst: int
