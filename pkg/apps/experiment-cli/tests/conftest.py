import pytest

from nodeavg_cli import main, save
from nodeavg_graph import build_base_graph, build_skeleton
from nodeavg_graph import generators as gen


@pytest.fixture(scope="session")
def ct_file(tmp_path_factory):
    path = tmp_path_factory.mktemp("graphs") / "ct-k0-b6.graph"
    save(build_base_graph(build_skeleton(0, 6)), path)
    return path


@pytest.fixture(scope="session")
def gnp_file(tmp_path_factory):
    path = tmp_path_factory.mktemp("graphs") / "gnp.graph"
    save(gen.gnp(120, 0.06, seed=5), path)
    return path


@pytest.fixture
def cli(capsys):
    """Run the CLI and return (exit code, stdout)."""

    def invoke(*argv: str) -> tuple[int, str]:
        code = main([str(a) for a in argv])
        return code, capsys.readouterr().out

    return invoke
