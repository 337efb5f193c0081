"""CSV rows with exact rational columns."""

from __future__ import annotations

import csv
from collections.abc import Iterable
from fractions import Fraction
from pathlib import Path
from typing import IO, Any

from nodeavg_graph import InputError
from nodeavg_sim import TrialSummary, rational_columns

from .models import SweepRow, TrialRow

# column prefix -> model field holding a Fraction
RUN_RATIONALS = {
    "avg_v": "avg_v",
    "avg_e": "avg_e",
    "exp_v_max": "exp_v_max",
    "s0": "s0_fraction",
    "removal": "removal_fraction",
}
RUN_FIELDS = [
    "kind",
    "graph_id",
    "algorithm",
    "seed",
    "n",
    "m",
    "avg_v", "avg_v_num", "avg_v_den",
    "avg_e", "avg_e_num", "avg_e_den",
    "worst",
    "exp_v_max", "exp_v_max_num", "exp_v_max_den",
    "valid",
    "timed_out",
    "s0", "s0_num", "s0_den",
    "removal", "removal_num", "removal_den",
    "violations",
]
SWEEP_FIELDS = [
    "n",
    "algorithm",
    "trials",
    "avg_v", "avg_v_num", "avg_v_den",
    "avg_e", "avg_e_num", "avg_e_den",
    "worst",
    "wins",
]


def _rational(prefix: str, x: Fraction | None) -> dict[str, Any]:
    if x is None:
        return {prefix: "", f"{prefix}_num": "", f"{prefix}_den": ""}
    text, num, den = rational_columns(x)
    return {prefix: text, f"{prefix}_num": num, f"{prefix}_den": den}


def run_record(row: TrialRow) -> dict[str, Any]:
    out: dict[str, Any] = {
        "kind": row.kind,
        "graph_id": row.graph_id,
        "algorithm": row.algorithm,
        "seed": row.seed,
        "n": row.n,
        "m": row.m,
        "worst": row.worst,
        "valid": int(row.valid),
        "timed_out": int(row.timed_out),
        "violations": row.violations,
    }
    for prefix, name in RUN_RATIONALS.items():
        out.update(_rational(prefix, getattr(row, name)))
    return out


def sweep_record(row: SweepRow, wins: int | None = None) -> dict[str, Any]:
    out: dict[str, Any] = {"n": row.n, "algorithm": row.algorithm, "trials": row.trials, "worst": row.worst}
    out.update(_rational("avg_v", row.avg_v))
    out.update(_rational("avg_e", row.avg_e))
    out["wins"] = "" if wins is None else wins
    return out


def write_rows(f: IO[str], fieldnames: list[str], records: Iterable[dict[str, Any]]) -> None:
    w = csv.DictWriter(f, fieldnames=fieldnames, extrasaction="ignore", lineterminator="\n")
    w.writeheader()
    for record in records:
        w.writerow({k: record.get(k, "") for k in fieldnames})


def write_csv(path: Path, fieldnames: list[str], records: Iterable[dict[str, Any]]) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", encoding="utf-8", newline="") as f:
        write_rows(f, fieldnames, records)


def _fraction(record: dict[str, str], prefix: str) -> Fraction | None:
    num, den = record.get(f"{prefix}_num", ""), record.get(f"{prefix}_den", "")
    if num == "" and den == "":
        return None
    try:
        return Fraction(int(num), int(den))
    except (ValueError, ZeroDivisionError):
        raise InputError(f"bad rational columns for {prefix}: {num!r}/{den!r}") from None


def read_run_rows(path: Path) -> list[TrialRow]:
    path = Path(path)
    try:
        with path.open("r", encoding="utf-8", newline="") as f:
            records = list(csv.DictReader(f))
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    rows = []
    for i, rec in enumerate(records, 2):
        missing = [k for k in RUN_FIELDS if k not in rec]
        if missing:
            raise InputError(f"{path}: missing columns {missing}")
        try:
            rows.append(
                TrialRow(
                    kind=rec["kind"],
                    graph_id=rec["graph_id"],
                    algorithm=rec["algorithm"],
                    seed=int(rec["seed"]),
                    n=int(rec["n"]),
                    m=int(rec["m"]),
                    avg_v=_fraction(rec, "avg_v") or Fraction(0),
                    avg_e=_fraction(rec, "avg_e") or Fraction(0),
                    worst=int(rec["worst"]),
                    exp_v_max=_fraction(rec, "exp_v_max"),
                    valid=rec["valid"] == "1",
                    timed_out=rec["timed_out"] == "1",
                    s0_fraction=_fraction(rec, "s0"),
                    removal_fraction=_fraction(rec, "removal"),
                    violations=rec["violations"],
                )
            )
        except ValueError as exc:
            raise InputError(f"{path}:{i}: {exc}") from None
    return rows


def summaries(rows: Iterable[TrialRow]) -> list[TrialSummary]:
    """Completed trial rows as the simulator's per-trial summaries."""
    return [
        TrialSummary(
            seed=r.seed,
            n=r.n,
            m=r.m,
            avg_v=r.avg_v,
            avg_e=r.avg_e,
            rounds=r.worst,
            max_v=int(r.exp_v_max or 0),
        )
        for r in rows
        if r.kind == "trial" and not r.timed_out
    ]
