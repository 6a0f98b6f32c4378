import pytest
from hypothesis import HealthCheck, settings

from core.graph import Graph, complete, cycle, disjoint_union, matching, path, star

# Fixed seed so every run draws the same examples
settings.register_profile(
    "taucrit",
    derandomize=True,
    deadline=None,
    suppress_health_check=[HealthCheck.function_scoped_fixture],
)
settings.load_profile("taucrit")


@pytest.fixture(autouse=True)
def _isolated_settings(monkeypatch, tmp_path):
    "Keeps a developer's taucrit.ini and TAUCRIT_* variables out of the tests"

    for variable in (
        "TAUCRIT_TOL",
        "TAUCRIT_MAX_ITER",
        "TAUCRIT_SURANYI_CAP",
        "TAUCRIT_DATABASE_URL",
    ):
        monkeypatch.delenv(variable, raising=False)
    monkeypatch.chdir(tmp_path)


@pytest.fixture
def named() -> dict[str, Graph]:
    "Small graphs used across the test modules"

    return {
        "K2": complete(2),
        "K3": complete(3),
        "K4": complete(4),
        "K5": complete(5),
        "K6": complete(6),
        "K8": complete(8),
        "C4": cycle(4),
        "C5": cycle(5),
        "C7": cycle(7),
        "P3": path(3),
        "P4": path(4),
        "K13": star(3),
        "2K2": matching(2),
        "3K2": matching(3),
        "K3+K2": disjoint_union(complete(3), complete(2)),
        "K4+K2": disjoint_union(complete(4), complete(2)),
        "C5+K2": disjoint_union(cycle(5), complete(2)),
        "C7+K2": disjoint_union(cycle(7), complete(2)),
        "K2+K1": Graph.from_edges(3, [(0, 1)]),
    }
