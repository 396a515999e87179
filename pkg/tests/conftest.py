import pytest

from geombij.fixtures import graph_fixture, ribbon_fixture


def pytest_terminal_summary(terminalreporter):
    """One PASS/FAIL line per acceptance criterion."""
    lines = []
    for key in ("passed", "failed", "error"):
        for rep in terminalreporter.stats.get(key, []):
            nodeid = getattr(rep, "nodeid", "")
            if "test_acceptance.py::" not in nodeid or getattr(rep, "when", "call") != "call":
                continue
            lines.append((nodeid.split("::")[-1], "PASS" if rep.passed else "FAIL"))
    if lines:
        terminalreporter.section("acceptance criteria")
        for name, status in sorted(lines, key=lambda x: int(x[0].split("_")[1])):
            terminalreporter.write_line(f"{status}  {name}")


@pytest.fixture
def theta():
    return graph_fixture("theta")


@pytest.fixture
def k4():
    return graph_fixture("k4")


@pytest.fixture
def planar_theta():
    return ribbon_fixture("planar-theta")


@pytest.fixture
def planar_k4():
    return ribbon_fixture("k4")
