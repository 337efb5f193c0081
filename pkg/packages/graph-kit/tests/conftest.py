import pytest

from nodeavg_graph import build_base_graph, build_skeleton, random_lift


@pytest.fixture(scope="session")
def base_k0_b6():
    return build_base_graph(build_skeleton(0, 6))


@pytest.fixture(scope="session")
def base_k1_b10():
    return build_base_graph(build_skeleton(1, 10))


@pytest.fixture(scope="session")
def lift_k1_b10_q2(base_k1_b10):
    return random_lift(base_k1_b10, 2, seed=3)
