"""The single static chart of a sweep: avg_v against n, one line per algorithm."""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")
matplotlib.rcParams.update({"font.family": "DejaVu Sans", "axes.unicode_minus": False, "svg.hashsalt": "nodeavg"})
import matplotlib.pyplot as plt  # noqa: E402
from loguru import logger  # noqa: E402

from .models import SweepRow  # noqa: E402


def write_sweep_chart(rows: list[SweepRow], path: Path) -> None:
    by_algorithm: dict[str, list[SweepRow]] = {}
    for r in rows:
        by_algorithm.setdefault(r.algorithm, []).append(r)

    fig, ax = plt.subplots(figsize=(6, 4), constrained_layout=True)
    for name, series in sorted(by_algorithm.items()):
        series.sort(key=lambda r: r.n)
        ax.plot([r.n for r in series], [float(r.avg_v) for r in series], marker="o", label=name)
    ax.set_xscale("log")
    ax.set_xlabel("n")
    ax.set_ylabel("node-averaged rounds")
    ax.grid(True, alpha=0.3)
    ax.legend(loc="best", fontsize=8)

    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    # no Date metadata, so identical sweeps give identical files
    fig.savefig(path, format="svg", metadata={"Date": None})
    plt.close(fig)
    logger.info("wrote chart {}", path)
