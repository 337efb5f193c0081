"""``nodeavg`` command line: gen, run, verify, sweep, report.

Exit codes: 0 ok, 1 validation failure or timeout, 2 input error.
"""

from __future__ import annotations

import argparse
import asyncio
import sys
from collections.abc import Callable, Iterable
from fractions import Fraction
from pathlib import Path
from typing import Any

import numpy as np
from loguru import logger
from pydantic import ValidationError

from nodeavg_graph import (
    ClusterGraph,
    InputError,
    NodeAvgError,
    alpha_components,
    build_base_graph,
    build_skeleton,
    canonical_view_hash,
    cluster_cycle_reference,
    cycle_stats,
    find_isomorphism,
    find_treelike_pairs,
    lift_cycle_bound,
    lift_graph,
    radius_view,
    random_lift,
    validate_family,
    verify_isomorphism,
)
from nodeavg_graph import generators as gen
from nodeavg_sim import AlgorithmConfig, AlgorithmName, RulingMode, rational_columns, report, report_from_rows
from nodeavg_sim.algorithms import ROUNDERS

from . import csvio, fileformat
from .charts import write_sweep_chart
from .config import config
from .log_setup import create_logger
from .models import ExperimentSpec, SweepRow
from .trials import run_trials, trial_rows

OK, FAILED, BAD_INPUT = 0, 1, 2


def _emit(out: Path | None, fieldnames: list[str], records: Iterable[dict[str, Any]]) -> None:
    if out is None:
        csvio.write_rows(sys.stdout, fieldnames, records)
    else:
        csvio.write_csv(out, fieldnames, records)
        logger.info("wrote {}", out)


def _algorithm(args: argparse.Namespace, name: str | None = None) -> AlgorithmConfig:
    return AlgorithmConfig(name=name or args.algorithm, r=args.r, mode=args.mode, rounder=args.rounder)


def _cluster_graph(g: fileformat.AnyGraph, command: str) -> ClusterGraph:
    if not isinstance(g, ClusterGraph):
        raise InputError(f"'{command}' needs a cluster graph file (written by 'gen ct')")
    return g


# ----------------------------------------------------------------------
# gen
# ----------------------------------------------------------------------


def cmd_gen(args: argparse.Namespace) -> int:
    if args.family == "ct":
        g: fileformat.AnyGraph = build_base_graph(build_skeleton(args.k, args.beta))
        if args.lift > 1:
            g = random_lift(g, args.lift, args.seed)
    elif args.family == "gnp":
        g = gen.gnp(args.n, args.p, args.seed)
    else:
        g = gen.random_regular(args.n, args.d, args.seed)
    graph = fileformat.plain(g)
    logger.info("generated {} n={} m={}", args.family, graph.n, graph.m)
    if args.out is None:
        sys.stdout.write(fileformat.dumps(g))
    else:
        fileformat.save(g, args.out)
    return OK


# ----------------------------------------------------------------------
# run
# ----------------------------------------------------------------------


def cmd_run(args: argparse.Namespace) -> int:
    experiment = ExperimentSpec(
        graph=args.graph,
        algorithm=_algorithm(args),
        trials=args.trials,
        seed=args.seed,
        max_rounds=args.max_rounds,
        out=args.out,
    )
    g = fileformat.load(experiment.graph)
    graph = fileformat.plain(g)
    if experiment.algorithm.name is AlgorithmName.SINKLESS and graph.n and graph.min_degree < 3:
        raise InputError(f"sinkless orientation needs minimum degree 3, graph has {graph.min_degree}")

    outcomes = asyncio.run(
        run_trials(graph, experiment.algorithm, experiment.seeds, experiment.max_rounds, config.threads)
    )
    rows = trial_rows(experiment.algorithm, g, outcomes, experiment.graph.stem)
    _emit(experiment.out, csvio.RUN_FIELDS, (csvio.run_record(r) for r in rows))

    status = OK
    for r in rows:
        if r.kind != "trial":
            continue
        if r.timed_out:
            logger.error("seed={} timed out after {} rounds", r.seed, r.worst)
            status = FAILED
        elif not r.valid:
            logger.error("seed={} violates {}", r.seed, r.violations)
            status = FAILED
    aggregate = rows[-1] if rows[-1].kind == "aggregate" else None
    if aggregate is not None:
        logger.info(
            "{} trials={} avg_v={:.3f} avg_e={:.3f} worst={}",
            experiment.algorithm.name.value,
            experiment.trials,
            float(aggregate.avg_v),
            float(aggregate.avg_e),
            aggregate.worst,
        )
    return status


# ----------------------------------------------------------------------
# verify
# ----------------------------------------------------------------------


def verify_family(args: argparse.Namespace) -> int:
    g = _cluster_graph(fileformat.load(args.graph), "verify family")
    rep = validate_family(g)
    _emit(
        args.out,
        ["kind", "message", "nodes"],
        ({"kind": v.kind, "message": v.message, "nodes": " ".join(map(str, v.nodes))} for v in rep.violations),
    )
    if not rep.ok:
        logger.error("family check failed: {}", rep.kinds())
        return FAILED
    logger.info("family check passed ({} nodes)", rep.checked)
    return OK


def verify_iso(args: argparse.Namespace) -> int:
    g = _cluster_graph(fileformat.load(args.graph), "verify iso")
    pairs = find_treelike_pairs(g, args.k, args.seed, args.pairs)
    if not pairs:
        logger.error("no pair of tree-like radius-{} views in S(c0) x S(c1)", args.k)
        return FAILED
    records = []
    passed = True
    for v0, v1 in pairs:
        m = find_isomorphism(g, args.k, v0, v1)
        verified = verify_isomorphism(g, args.k, v0, v1, m)
        same_hash = canonical_view_hash(radius_view(g.graph, v0, args.k)) == canonical_view_hash(
            radius_view(g.graph, v1, args.k)
        )
        passed &= verified and same_hash
        records.append({"v0": v0, "v1": v1, "mapped": len(m), "verified": int(verified), "hash_equal": int(same_hash)})
    _emit(args.out, ["v0", "v1", "mapped", "verified", "hash_equal"], records)
    if not passed:
        failures = sum(1 for r in records if not (r["verified"] and r["hash_equal"]))
        logger.error("isomorphism check failed on {} of {} pairs", failures, len(records))
        return FAILED
    logger.info("isomorphism verified on {} pairs at depth {}", len(pairs), args.k)
    return OK


def verify_cycles(args: argparse.Namespace) -> int:
    records = []
    if args.graph is not None:
        g = fileformat.load(args.graph)
        graph = fileformat.plain(g)
        q = g.lift_order if isinstance(g, ClusterGraph) else 1
        fractions = [cycle_stats(graph, args.ell)]
        bound = lift_cycle_bound(graph.max_degree, args.ell, q)
        reference = cluster_cycle_reference(g.skeleton.beta) if isinstance(g, ClusterGraph) else None
    else:
        if args.lifts < 1:
            raise InputError(f"lifts must be >= 1, got {args.lifts}")
        base = gen.complete(args.complete)
        fractions = [cycle_stats(lift_graph(base, args.q, args.seed + i), args.ell) for i in range(args.lifts)]
        bound = lift_cycle_bound(base.max_degree, args.ell, args.q)
        reference = None

    values = np.array([float(f) for f in fractions])
    mean = float(values.mean())
    sigma = float(values.std())
    for i, f in enumerate(fractions):
        text, num, den = rational_columns(f)
        records.append({"instance": i, "fraction": text, "fraction_num": num, "fraction_den": den})
    _emit(args.out, ["instance", "fraction", "fraction_num", "fraction_den"], records)
    logger.info(
        "cycles ell={} mean={:.4f} sd={:.4f} bound={:.4f}{}",
        args.ell, mean, sigma, float(bound),
        "" if reference is None else f" reference={float(reference):.4f}",
    )
    if mean > float(bound):
        logger.error("mean short-cycle fraction {:.4f} exceeds {:.4f}", mean, float(bound))
        return FAILED
    if np.any(values > float(bound) + 3 * sigma):
        logger.error("a lift exceeds the bound by more than three standard deviations")
        return FAILED
    return OK


def verify_alpha(args: argparse.Namespace) -> int:
    g = _cluster_graph(fileformat.load(args.graph), "verify alpha")
    samples = alpha_components(g, args.cluster, args.samples, args.seed)
    records = []
    passed = True
    for s in samples:
        # an exhausted search falls back to the per-clique bound, which holds by construction
        ok = s.alpha is None or s.alpha <= s.bound
        passed &= ok
        records.append(
            {
                "cluster": s.cluster,
                "component": s.component,
                "size": s.size,
                "alpha": "" if s.alpha is None else s.alpha,
                "bound": s.bound,
                "status": "exact" if s.alpha is not None else "structural",
            }
        )
    _emit(args.out, ["cluster", "component", "size", "alpha", "bound", "status"], records)
    if not passed:
        logger.error("independence bound violated in cluster {}", args.cluster)
        return FAILED
    logger.info("independence bound holds on {} components of cluster {}", len(samples), args.cluster)
    return OK


VERIFIERS: dict[str, Callable[[argparse.Namespace], int]] = {
    "family": verify_family,
    "iso": verify_iso,
    "cycles": verify_cycles,
    "alpha": verify_alpha,
}


def cmd_verify(args: argparse.Namespace) -> int:
    return VERIFIERS[args.check](args)


# ----------------------------------------------------------------------
# sweep
# ----------------------------------------------------------------------


def _instance(args: argparse.Namespace, size: int) -> fileformat.AnyGraph:
    if args.family == "gnp":
        return gen.gnp(size, min(1.0, args.avg_degree / size), args.seed)
    if args.family == "regular":
        return gen.random_regular(size, args.d, args.seed)
    base = build_base_graph(build_skeleton(args.k, args.beta))
    return base if size == 1 else random_lift(base, size, args.seed)


def cmd_sweep(args: argparse.Namespace) -> int:
    names = args.compare.split(",") if args.compare else [args.algorithm]
    if len(names) not in (1, 2):
        raise InputError("--compare takes exactly two algorithms, e.g. luby-mis,ruling22")
    algorithms = [_algorithm(args, name) for name in names]
    if args.trials < 1:
        raise InputError(f"trials must be >= 1, got {args.trials}")
    seeds = range(args.seed, args.seed + args.trials)

    records = []
    rows: list[SweepRow] = []
    status = OK
    for size in args.sizes:
        g = _instance(args, size)
        graph = fileformat.plain(g)
        per_seed: list[list[Fraction]] = []
        sweep_rows: list[SweepRow] = []
        for algorithm in algorithms:
            outcomes = asyncio.run(run_trials(graph, algorithm, seeds, args.max_rounds, config.threads))
            bad = [o.seed for o in outcomes if o.timed_out or not o.validation.ok]
            if bad:
                logger.error("{} failed on n={} for seeds {}", algorithm.name.value, graph.n, bad)
                status = FAILED
            done = [o.trace for o in outcomes if not o.timed_out]
            if not done:
                continue
            rep = report(done, graph)
            per_seed.append([r.avg_v for r in rep.rows])
            sweep_rows.append(
                SweepRow(
                    n=graph.n,
                    algorithm=algorithm.name.value,
                    trials=rep.trials,
                    avg_v=rep.avg_v,
                    avg_e=rep.avg_e,
                    worst=rep.worst,
                )
            )
        wins: list[int | None] = [None] * len(sweep_rows)
        if len(sweep_rows) == 2 and len(per_seed[0]) == len(per_seed[1]):
            a, b = per_seed
            wins = [sum(x > y for x, y in zip(a, b)), sum(y > x for x, y in zip(a, b))]
            logger.info("n={} {} above {} on {} of {} seeds", graph.n, names[0], names[1], wins[0], len(a))
        for row, w in zip(sweep_rows, wins):
            logger.info(
                "n={} {} avg_v={:.3f} avg_e={:.3f} worst={}",
                row.n, row.algorithm, float(row.avg_v), float(row.avg_e), row.worst,
            )
            records.append(csvio.sweep_record(row, w))
        rows.extend(sweep_rows)

    _emit(args.out, csvio.SWEEP_FIELDS, records)
    if args.svg is not None:
        write_sweep_chart(rows, args.svg)
    return status


# ----------------------------------------------------------------------
# report
# ----------------------------------------------------------------------


def cmd_report(args: argparse.Namespace) -> int:
    rows = csvio.read_run_rows(args.csv)
    summaries = csvio.summaries(rows)
    if not summaries:
        raise InputError(f"{args.csv} has no completed trial rows")
    agg = report_from_rows(summaries)
    trials = [r for r in rows if r.kind == "trial"]
    stored = [r for r in rows if r.kind == "aggregate"]
    # per-node means are not in the rows; keep the stored value
    exp_v_max = stored[-1].exp_v_max if stored else None
    out = trials[0].model_copy(
        update={
            "kind": "aggregate",
            "avg_v": agg.avg_v,
            "avg_e": agg.avg_e,
            "worst": agg.worst,
            "exp_v_max": exp_v_max,
            "valid": all(r.valid for r in trials),
            "timed_out": any(r.timed_out for r in trials),
            "s0_fraction": min((r.s0_fraction for r in trials if r.s0_fraction is not None), default=None),
            "removal_fraction": min(
                (r.removal_fraction for r in trials if r.removal_fraction is not None), default=None
            ),
            "violations": ";".join(sorted({k for r in trials for k in r.violations.split(";") if k})),
        }
    )
    _emit(args.out, csvio.RUN_FIELDS, [csvio.run_record(out)])

    if stored:
        s = stored[-1]
        if (s.avg_v, s.avg_e, s.worst) != (agg.avg_v, agg.avg_e, agg.worst):
            logger.error("stored aggregate disagrees with its trial rows")
            return FAILED
        if exp_v_max is not None and not agg.avg_v <= exp_v_max <= agg.worst:
            logger.error("exp_v_max {} lies outside [avg_v, worst]", exp_v_max)
            return FAILED
    logger.info("re-aggregated {} trials avg_v={} avg_e={} worst={}", agg.trials, agg.avg_v, agg.avg_e, agg.worst)
    return OK


# ----------------------------------------------------------------------
# Argument parsing
# ----------------------------------------------------------------------


def _int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _algorithm_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--r", type=int, default=3, help="Short-cycle radius of sinkless orientation (>= 3)")
    p.add_argument(
        "--mode",
        choices=[m.value for m in RulingMode],
        default=RulingMode.LOG_DELTA.value,
        help="Iteration budget of the deterministic ruling set",
    )
    p.add_argument("--rounder", choices=sorted(ROUNDERS), default="greedy", help="Rounding oracle of det-mm")
    p.add_argument("--trials", type=int, default=1, help="Seeds base .. base + trials - 1")
    p.add_argument("--seed", type=int, default=0, help="Base seed")
    p.add_argument("--max-rounds", type=int, default=config.max_rounds, help="Round cap per trial")
    p.add_argument("--out", type=Path, default=None, help="CSV destination (default stdout)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="nodeavg", description="LOCAL round simulator and lower-bound graph kit.")
    sub = parser.add_subparsers(dest="command", required=True)
    algorithms = [a.value for a in AlgorithmName]

    g = sub.add_parser("gen", help="Write a graph file")
    families = g.add_subparsers(dest="family", required=True)
    ct = families.add_parser("ct", help="Cluster-tree base graph, optionally lifted")
    ct.add_argument("--k", type=int, required=True, help="Skeleton depth parameter")
    ct.add_argument("--beta", type=int, required=True, help="Even branching parameter >= 4")
    ct.add_argument("--lift", type=int, default=1, help="Random lift order q")
    ct.add_argument("--seed", type=int, default=0, help="Lift seed")
    gnp = families.add_parser("gnp", help="Erdos-Renyi G(n, p)")
    gnp.add_argument("--n", type=int, required=True)
    gnp.add_argument("--p", type=float, required=True)
    gnp.add_argument("--seed", type=int, default=0)
    reg = families.add_parser("regular", help="Random d-regular graph")
    reg.add_argument("--n", type=int, required=True)
    reg.add_argument("--d", type=int, required=True)
    reg.add_argument("--seed", type=int, default=0)
    for p in (ct, gnp, reg):
        p.add_argument("--out", type=Path, default=None, help="Graph file destination (default stdout)")
    g.set_defaults(handler=cmd_gen)

    r = sub.add_parser("run", help="Run seeded trials of one algorithm on a graph file")
    r.add_argument("--graph", type=Path, required=True, help="Graph file")
    r.add_argument("--algorithm", choices=algorithms, required=True)
    _algorithm_flags(r)
    r.set_defaults(handler=cmd_run)

    v = sub.add_parser("verify", help="Exact checks on the lower-bound family")
    checks = v.add_subparsers(dest="check", required=True)
    fam = checks.add_parser("family", help="Exact neighbor-count and label check")
    fam.add_argument("--graph", type=Path, required=True)
    iso = checks.add_parser("iso", help="Map tree-like views of S(c0) onto S(c1)")
    iso.add_argument("--graph", type=Path, required=True)
    iso.add_argument("--k", type=int, required=True, help="View radius")
    iso.add_argument("--pairs", type=int, default=1, help="Number of disjoint pairs to check")
    iso.add_argument("--seed", type=int, default=0)
    cyc = checks.add_parser("cycles", help="Fraction of nodes on short cycles against the lift bound")
    cyc.add_argument("--ell", type=int, required=True, help="Cycle length bound")
    cyc.add_argument("--graph", type=Path, default=None, help="Graph file; default lifts of a complete graph")
    cyc.add_argument("--complete", type=int, default=4, help="Base complete graph size")
    cyc.add_argument("--lifts", type=int, default=50, help="Number of lifts")
    cyc.add_argument("--q", type=int, default=100, help="Lift order")
    cyc.add_argument("--seed", type=int, default=0, help="Seed of the first lift")
    alpha = checks.add_parser("alpha", help="Exact independence number of sampled clique pairs")
    alpha.add_argument("--graph", type=Path, required=True)
    alpha.add_argument("--cluster", type=int, required=True, help="Non-root skeleton node")
    alpha.add_argument("--samples", type=int, default=5)
    alpha.add_argument("--seed", type=int, default=0)
    for p in (fam, iso, cyc, alpha):
        p.add_argument("--out", type=Path, default=None, help="CSV destination (default stdout)")
    v.set_defaults(handler=cmd_verify)

    s = sub.add_parser("sweep", help="Averaged complexity across instance sizes")
    s.add_argument("--family", choices=["gnp", "regular", "ct"], required=True)
    s.add_argument("--sizes", type=_int_list, required=True, help="Node counts, or lift orders for ct")
    s.add_argument("--algorithm", choices=algorithms, default=AlgorithmName.RULING22.value)
    s.add_argument("--compare", default=None, help="Two algorithms A,B run on the same instances and seeds")
    s.add_argument("--avg-degree", type=float, default=10.0, help="Expected degree of gnp instances")
    s.add_argument("--d", type=int, default=3, help="Degree of regular instances")
    s.add_argument("--k", type=int, default=1)
    s.add_argument("--beta", type=int, default=10)
    s.add_argument("--svg", type=Path, default=None, help="Write a line chart of avg_v against n")
    _algorithm_flags(s)
    s.set_defaults(handler=cmd_sweep)

    rep = sub.add_parser("report", help="Re-aggregate the trial rows of a run CSV")
    rep.add_argument("--csv", type=Path, required=True)
    rep.add_argument("--out", type=Path, default=None)
    rep.set_defaults(handler=cmd_report)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    create_logger("nodeavg", config)
    try:
        return args.handler(args)
    except (InputError, ValidationError) as exc:
        logger.error("{}", exc)
        return BAD_INPUT
    except NodeAvgError as exc:
        logger.error("{}: {}", type(exc).__name__, exc)
        return FAILED


if __name__ == "__main__":
    sys.exit(main())
