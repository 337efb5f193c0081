import numpy as np
import pytest

from nodeavg_cli import dumps, load, loads, save
from nodeavg_graph import ClusterGraph, Graph, InputError, build_base_graph, build_skeleton, random_lift, validate_family
from nodeavg_graph import generators as gen


def test_plain_graph_text():
    assert dumps(gen.path(3)) == "graph v1\nnodes 3\nedges 2\ne 0 1\ne 1 2\n"


def test_plain_graph_reads_back():
    g = loads(dumps(gen.cycle(7)))
    assert isinstance(g, Graph)
    assert np.array_equal(g.edges, gen.cycle(7).edges)


def test_empty_graph():
    g = loads("graph v1\nnodes 4\nedges 0\n")
    assert g.n == 4 and g.m == 0


def test_cluster_graph_keeps_labels_and_clusters():
    base = build_base_graph(build_skeleton(0, 6))
    g = loads(dumps(base))
    assert isinstance(g, ClusterGraph)
    assert g.n == 48
    assert np.array_equal(g.cluster_of, base.cluster_of)
    assert np.array_equal(g.slot_exp, base.slot_exp)
    assert np.array_equal(g.slot_self, base.slot_self)
    assert g.skeleton.nodes == base.skeleton.nodes
    assert g.skeleton.edges == base.skeleton.edges
    assert validate_family(g).ok


def test_lift_layout_restores_base_map():
    lifted = random_lift(build_base_graph(build_skeleton(0, 6)), 3, seed=2)
    g = loads(dumps(lifted))
    assert g.lift_order == 3
    assert np.array_equal(g.base_of, lifted.base_of)
    assert validate_family(g).ok


def test_file_on_disk(tmp_path):
    path = tmp_path / "nested" / "k4.graph"
    save(gen.complete(4), path)
    assert load(path).m == 6


def _tamper(text: str, old: str, new: str) -> str:
    assert old in text
    return text.replace(old, new, 1)


@pytest.mark.parametrize(
    "broken",
    [
        "",
        "graph v2\nnodes 1\nedges 0\n",
        "graph v1\nnodes 3\nedges 2\ne 0 1\n",
        "graph v1\nnodes 3\nedges 1\ne 1 0\n",
        "graph v1\nnodes 3\nedges 2\ne 1 2\ne 0 1\n",
        "graph v1\nnodes 3\nedges 1\ne 0 x\n",
        "graph v1\nnodes 3\nedges 1\ne 0 1\nextra 1\n",
        "graph v1\nnodes 2\nedges 1\ne 0 2\n",
        "graph v1\nnodes 2\nedges 1\ne 0 1 0 1\n",
    ],
)
def test_malformed_plain_files(broken):
    with pytest.raises(InputError):
        loads(broken)


def test_rejects_label_that_disagrees_with_clusters():
    text = dumps(build_base_graph(build_skeleton(0, 6)))
    line = next(x for x in text.splitlines() if x.startswith("e ") and x.endswith(" 1 1"))
    with pytest.raises(InputError, match="disagrees"):
        loads(_tamper(text, "\n" + line + "\n", "\n" + line[:-3] + "0 1\n"))


def test_rejects_missing_cluster_lines():
    text = dumps(build_base_graph(build_skeleton(0, 6)))
    with pytest.raises(InputError):
        loads(text.rsplit("cluster", 1)[0])


def test_rejects_unknown_node_kind():
    text = dumps(build_base_graph(build_skeleton(0, 6)))
    with pytest.raises(InputError, match="unknown node kind"):
        loads(_tamper(text, "internal", "branch"))


def test_missing_file_is_input_error(tmp_path):
    with pytest.raises(InputError):
        load(tmp_path / "absent.graph")
