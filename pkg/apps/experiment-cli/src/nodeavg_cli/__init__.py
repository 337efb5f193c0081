"""nodeavg experiment CLI -- instance generation, seeded trial runs, family checks and sweeps."""

from .fileformat import dumps, load, loads, save
from .main import build_parser, main
from .models import ExperimentSpec, SweepRow, TrialRow
from .trials import TrialOutcome, run_trial, run_trials, trial_rows

__all__ = [
    "ExperimentSpec",
    "SweepRow",
    "TrialOutcome",
    "TrialRow",
    "build_parser",
    "dumps",
    "load",
    "loads",
    "main",
    "run_trial",
    "run_trials",
    "save",
    "trial_rows",
]
