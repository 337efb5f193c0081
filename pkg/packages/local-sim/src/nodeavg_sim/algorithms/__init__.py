"""Algorithm registry: CLI names, parameter validation, factories and validators."""

from __future__ import annotations

from collections.abc import Callable
from dataclasses import dataclass
from enum import Enum

from pydantic import BaseModel, Field, field_validator

from nodeavg_graph import Graph, ValidationReport

from ..program import NodeProgram, PhasedProgram
from ..types import ExecutionTrace
from ..validators import validate_matching, validate_mis, validate_orientation, validate_ruling_set
from . import luby, matching, ruling
from .coloring import LinialMis, cole_vishkin_3color, forest_mis, linial_greedy_mis, linial_schedule, log_star
from .det_matching import ROUNDERS, DeterministicMatching, FractionalEdge, fractional_matching, greedy_weight_rounder
from .det_ruling import DeterministicRulingSet, RulingMode, halving_iterations
from .greedy import GreedyMisById
from .luby import LubyMis
from .matching import RandomizedMatching
from .ruling import RulingSet22
from .sinkless import SinklessOrientation


class AlgorithmName(str, Enum):
    LUBY_MIS = "luby-mis"
    RULING22 = "ruling22"
    DET_RULING = "det-ruling"
    RAND_MM = "rand-mm"
    DET_MM = "det-mm"
    SINKLESS = "sinkless"
    LINIAL_MIS = "linial-mis"
    GREEDY_MIS = "greedy-mis"


class AlgorithmConfig(BaseModel):
    name: AlgorithmName = Field(description="Registered algorithm")
    r: int = Field(default=3, ge=3, description="Short-cycle radius for sinkless orientation")
    mode: RulingMode = Field(default=RulingMode.LOG_DELTA, description="Iteration budget of the deterministic ruling set")
    rounder: str = Field(default="greedy", description="Rounding oracle of the deterministic matching")

    @field_validator("rounder")
    @classmethod
    def _known_rounder(cls, value: str) -> str:
        if value not in ROUNDERS:
            raise ValueError(f"unknown rounder {value!r}; known: {sorted(ROUNDERS)}")
        return value


Program = NodeProgram | PhasedProgram
Validator = Callable[[Graph, ExecutionTrace], ValidationReport]


@dataclass(frozen=True)
class AlgorithmEntry:
    build: Callable[[AlgorithmConfig], Program]
    validate: Validator
    period: int | None = None  # rounds per iteration, for survival curves
    is_mis: bool = False


def _validate_det_ruling(g: Graph, trace: ExecutionTrace) -> ValidationReport:
    iterations = int(trace.annotations.get("halving_iterations", 0))
    return validate_ruling_set(g, trace, alpha=2, beta=iterations + 1)


ALGORITHMS: dict[AlgorithmName, AlgorithmEntry] = {
    AlgorithmName.LUBY_MIS: AlgorithmEntry(lambda c: LubyMis(), validate_mis, luby.PERIOD, is_mis=True),
    AlgorithmName.RULING22: AlgorithmEntry(lambda c: RulingSet22(), validate_ruling_set, ruling.PERIOD),
    AlgorithmName.DET_RULING: AlgorithmEntry(lambda c: DeterministicRulingSet(c.mode), _validate_det_ruling),
    AlgorithmName.RAND_MM: AlgorithmEntry(lambda c: RandomizedMatching(), validate_matching, matching.PERIOD),
    AlgorithmName.DET_MM: AlgorithmEntry(lambda c: DeterministicMatching(c.rounder), validate_matching),
    AlgorithmName.SINKLESS: AlgorithmEntry(lambda c: SinklessOrientation(c.r), validate_orientation),
    AlgorithmName.LINIAL_MIS: AlgorithmEntry(lambda c: LinialMis(), validate_mis, is_mis=True),
    AlgorithmName.GREEDY_MIS: AlgorithmEntry(lambda c: GreedyMisById(), validate_mis, is_mis=True),
}


def build_program(config: AlgorithmConfig) -> Program:
    return ALGORITHMS[config.name].build(config)


def validate_trace(config: AlgorithmConfig, g: Graph, trace: ExecutionTrace) -> ValidationReport:
    return ALGORITHMS[config.name].validate(g, trace)


__all__ = [
    "ALGORITHMS",
    "ROUNDERS",
    "AlgorithmConfig",
    "AlgorithmEntry",
    "AlgorithmName",
    "DeterministicMatching",
    "DeterministicRulingSet",
    "FractionalEdge",
    "GreedyMisById",
    "LinialMis",
    "LubyMis",
    "RandomizedMatching",
    "RulingMode",
    "RulingSet22",
    "SinklessOrientation",
    "build_program",
    "cole_vishkin_3color",
    "forest_mis",
    "fractional_matching",
    "greedy_weight_rounder",
    "halving_iterations",
    "linial_greedy_mis",
    "linial_schedule",
    "log_star",
    "validate_trace",
]
