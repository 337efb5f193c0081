import csv
import importlib
import io
from fractions import Fraction

import pytest

from nodeavg_cli import load
from nodeavg_cli.config import CliConfig
from nodeavg_cli.csvio import RUN_FIELDS, SWEEP_FIELDS


def read_csv(text: str) -> list[dict[str, str]]:
    return list(csv.DictReader(io.StringIO(text)))


def _fraction(row, prefix):
    return Fraction(int(row[f"{prefix}_num"]), int(row[f"{prefix}_den"]))


# ----------------------------------------------------------------------
# gen
# ----------------------------------------------------------------------


def test_gen_ct_base_passes_family_check(cli, tmp_path):
    path = tmp_path / "ct.graph"
    assert cli("gen", "ct", "--k", 0, "--beta", 6, "--out", path)[0] == 0
    assert load(path).n == 48
    assert cli("verify", "family", "--graph", path)[0] == 0


def test_gen_regular_counts(cli, tmp_path):
    path = tmp_path / "reg.graph"
    assert cli("gen", "regular", "--n", 100, "--d", 3, "--seed", 1, "--out", path)[0] == 0
    g = load(path)
    assert (g.n, g.m) == (100, 150)


def test_gen_to_stdout_is_deterministic(cli):
    code, first = cli("gen", "gnp", "--n", 30, "--p", 0.2, "--seed", 4)
    assert code == 0
    assert first.startswith("graph v1\nnodes 30\n")
    assert cli("gen", "gnp", "--n", 30, "--p", 0.2, "--seed", 4)[1] == first


def test_gen_lifted_ct(cli, tmp_path):
    path = tmp_path / "lift.graph"
    assert cli("gen", "ct", "--k", 0, "--beta", 6, "--lift", 3, "--seed", 7, "--out", path)[0] == 0
    g = load(path)
    assert g.n == 144 and g.lift_order == 3


@pytest.mark.parametrize(
    "argv",
    [
        ("gen", "ct", "--k", 0, "--beta", 5),
        ("gen", "ct", "--k", -1, "--beta", 6),
        ("gen", "regular", "--n", 9, "--d", 3),
        ("gen", "gnp", "--n", 10, "--p", 1.5),
    ],
)
def test_gen_rejects_bad_parameters(cli, argv):
    assert cli(*argv)[0] == 2


# ----------------------------------------------------------------------
# run and report
# ----------------------------------------------------------------------


def test_run_writes_trials_and_aggregate(cli, ct_file):
    code, out = cli("run", "--graph", ct_file, "--algorithm", "ruling22", "--trials", 4, "--seed", 10)
    assert code == 0
    rows = read_csv(out)
    assert list(rows[0]) == RUN_FIELDS
    assert [r["kind"] for r in rows] == ["trial"] * 4 + ["aggregate"]
    assert [int(r["seed"]) for r in rows[:4]] == [10, 11, 12, 13]
    assert all(r["valid"] == "1" and r["timed_out"] == "0" for r in rows)
    mean = sum(_fraction(r, "avg_v") for r in rows[:4]) / 4
    assert _fraction(rows[-1], "avg_v") == mean
    assert int(rows[-1]["worst"]) == max(int(r["worst"]) for r in rows[:4])
    assert {r["graph_id"] for r in rows} == {ct_file.stem}
    for r in rows:
        assert _fraction(r, "avg_v") <= _fraction(r, "exp_v_max") <= int(r["worst"])
    assert _fraction(rows[-1], "exp_v_max") <= max(_fraction(r, "exp_v_max") for r in rows[:4])


def test_run_output_is_byte_identical(cli, gnp_file, monkeypatch):
    argv = ("run", "--graph", gnp_file, "--algorithm", "luby-mis", "--trials", 6, "--seed", 3)
    first = cli(*argv)[1]
    monkeypatch.setattr(importlib.import_module("nodeavg_cli.main").config, "threads", 3)
    assert cli(*argv)[1] == first


def test_mis_on_cluster_graph_reports_s0_mass(cli, ct_file):
    code, out = cli("run", "--graph", ct_file, "--algorithm", "luby-mis", "--trials", 5)
    assert code == 0
    for row in read_csv(out):
        # any MIS keeps at least 1 - 2(k+1)/beta of S(c0)
        assert _fraction(row, "s0") >= Fraction(2, 3)


def test_plain_graph_has_no_s0_column(cli, gnp_file):
    out = cli("run", "--graph", gnp_file, "--algorithm", "greedy-mis")[1]
    assert read_csv(out)[0]["s0"] == ""


def test_matching_reports_removal_fraction(cli, gnp_file):
    out = cli("run", "--graph", gnp_file, "--algorithm", "det-mm", "--trials", 2)[1]
    for row in read_csv(out):
        assert _fraction(row, "removal") >= Fraction(1, 40)
    out = cli("run", "--graph", gnp_file, "--algorithm", "rand-mm", "--trials", 2)[1]
    assert all(row["removal"] != "" for row in read_csv(out))


def test_timeout_flags_rows_and_fails(cli, ct_file):
    code, out = cli("run", "--graph", ct_file, "--algorithm", "luby-mis", "--trials", 2, "--max-rounds", 1)
    assert code == 1
    rows = read_csv(out)
    assert [r["kind"] for r in rows] == ["trial", "trial"]
    assert all(r["timed_out"] == "1" and r["violations"] == "timeout" for r in rows)


@pytest.mark.parametrize(
    "extra",
    [
        ("--algorithm", "ruling22", "--trials", 0),
        ("--algorithm", "sinkless", "--r", 2),
        ("--algorithm", "ruling22", "--max-rounds", 0),
    ],
)
def test_run_rejects_bad_parameters(cli, ct_file, extra):
    assert cli("run", "--graph", ct_file, *extra)[0] == 2


def test_run_sinkless_needs_degree_three(cli, tmp_path):
    path = tmp_path / "path.graph"
    path.write_text("graph v1\nnodes 3\nedges 2\ne 0 1\ne 1 2\n", encoding="utf-8")
    assert cli("run", "--graph", path, "--algorithm", "sinkless")[0] == 2


def test_run_missing_graph_is_input_error(cli, tmp_path):
    assert cli("run", "--graph", tmp_path / "nope.graph", "--algorithm", "ruling22")[0] == 2


def test_report_reaggregates_run_csv(cli, gnp_file, tmp_path):
    csv_path = tmp_path / "run.csv"
    assert cli("run", "--graph", gnp_file, "--algorithm", "rand-mm", "--trials", 5, "--out", csv_path)[0] == 0
    stored = read_csv(csv_path.read_text(encoding="utf-8"))[-1]
    code, out = cli("report", "--csv", csv_path)
    assert code == 0
    (again,) = read_csv(out)
    for key in RUN_FIELDS:
        assert again[key] == stored[key]


def test_report_detects_edited_aggregate(cli, ct_file, tmp_path):
    csv_path = tmp_path / "run.csv"
    cli("run", "--graph", ct_file, "--algorithm", "ruling22", "--trials", 3, "--out", csv_path)
    lines = csv_path.read_text(encoding="utf-8").splitlines()
    head, last = lines[:-1], lines[-1].split(",")
    last[RUN_FIELDS.index("worst")] = "999"
    csv_path.write_text("\n".join(head + [",".join(last)]) + "\n", encoding="utf-8")
    assert cli("report", "--csv", csv_path)[0] == 1


def test_report_checks_node_maximum_against_worst(cli, ct_file, tmp_path):
    csv_path = tmp_path / "run.csv"
    cli("run", "--graph", ct_file, "--algorithm", "luby-mis", "--trials", 3, "--out", csv_path)
    lines = csv_path.read_text(encoding="utf-8").splitlines()
    head, last = lines[:-1], lines[-1].split(",")
    last[RUN_FIELDS.index("exp_v_max_num")] = "999999"
    last[RUN_FIELDS.index("exp_v_max_den")] = "1"
    csv_path.write_text("\n".join(head + [",".join(last)]) + "\n", encoding="utf-8")
    assert cli("report", "--csv", csv_path)[0] == 1


def test_report_rejects_foreign_csv(cli, tmp_path):
    path = tmp_path / "other.csv"
    path.write_text("a,b\n1,2\n", encoding="utf-8")
    assert cli("report", "--csv", path)[0] == 2


# ----------------------------------------------------------------------
# verify
# ----------------------------------------------------------------------


def test_verify_iso_depth_zero(cli, ct_file):
    code, out = cli("verify", "iso", "--graph", ct_file, "--k", 0, "--seed", 1)
    assert code == 0
    (row,) = read_csv(out)
    assert row["verified"] == "1" and row["hash_equal"] == "1"


def test_verify_alpha_on_clique_pair(cli, ct_file):
    code, out = cli("verify", "alpha", "--graph", ct_file, "--cluster", 1)
    assert code == 0
    (row,) = read_csv(out)
    assert (row["size"], row["alpha"], row["bound"], row["status"]) == ("12", "2", "2", "exact")


def test_verify_alpha_rejects_root_cluster(cli, ct_file):
    assert cli("verify", "alpha", "--graph", ct_file, "--cluster", 0)[0] == 2


def test_verify_cycles_on_complete_graph_lifts(cli):
    code, out = cli("verify", "cycles", "--ell", 4, "--lifts", 10, "--q", 100)
    assert code == 0
    assert len(read_csv(out)) == 10


def test_verify_family_needs_cluster_graph(cli, gnp_file):
    assert cli("verify", "family", "--graph", gnp_file)[0] == 2


# ----------------------------------------------------------------------
# sweep
# ----------------------------------------------------------------------


def test_sweep_rows_and_chart(cli, tmp_path):
    svg = tmp_path / "avg.svg"
    code, out = cli(
        "sweep", "--family", "gnp", "--sizes", "100,200", "--algorithm", "ruling22", "--trials", 3, "--svg", svg
    )
    assert code == 0
    rows = read_csv(out)
    assert list(rows[0]) == SWEEP_FIELDS
    assert [(r["n"], r["algorithm"], r["trials"]) for r in rows] == [("100", "ruling22", "3"), ("200", "ruling22", "3")]
    assert "<svg" in svg.read_text(encoding="utf-8")


def test_sweep_compare_counts_wins(cli):
    code, out = cli(
        "sweep", "--family", "ct", "--k", 0, "--beta", 6, "--sizes", "1,2",
        "--compare", "luby-mis,ruling22", "--trials", 4,
    )
    assert code == 0
    rows = read_csv(out)
    assert [r["algorithm"] for r in rows] == ["luby-mis", "ruling22"] * 2
    for a, b in (rows[0:2], rows[2:4]):
        assert int(a["wins"]) + int(b["wins"]) <= 4


def test_sweep_compare_needs_two_names(cli):
    assert cli("sweep", "--family", "gnp", "--sizes", "50", "--compare", "luby-mis")[0] == 2


def test_threads_come_from_environment(monkeypatch):
    monkeypatch.setenv("NODEAVG_THREADS", "3")
    assert CliConfig().threads == 3


# ----------------------------------------------------------------------
# Desk-scale experiments
# ----------------------------------------------------------------------


@pytest.mark.slow
def test_s0_mass_on_k1_base(cli, tmp_path):
    path = tmp_path / "ct-k1-b12.graph"
    assert cli("gen", "ct", "--k", 1, "--beta", 12, "--out", path)[0] == 0
    code, out = cli("run", "--graph", path, "--algorithm", "luby-mis", "--trials", 50)
    assert code == 0
    assert all(_fraction(r, "s0") >= Fraction(2, 3) for r in read_csv(out))


@pytest.mark.slow
def test_verify_iso_on_lift(cli, tmp_path):
    path = tmp_path / "lift.graph"
    assert cli("gen", "ct", "--k", 1, "--beta", 10, "--lift", 2, "--seed", 3, "--out", path)[0] == 0
    code, out = cli("verify", "iso", "--graph", path, "--k", 1, "--pairs", 20, "--seed", 11)
    assert code == 0
    assert len(read_csv(out)) == 20


@pytest.mark.slow
def test_luby_node_average_exceeds_ruling_set_on_lifted_ct(cli):
    code, out = cli(
        "sweep", "--family", "ct", "--k", 1, "--beta", 12, "--sizes", "20",
        "--compare", "luby-mis,ruling22", "--trials", 20,
    )
    assert code == 0
    luby, ruling = read_csv(out)
    assert (luby["algorithm"], ruling["algorithm"]) == ("luby-mis", "ruling22")
    assert int(luby["wins"]) >= 18
