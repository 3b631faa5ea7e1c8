import re

import hypothesis
import pytest

from zrule.engine import InitialGeneration, west_edge

hypothesis.settings.register_profile("default", max_examples=100, deadline=None)
hypothesis.settings.register_profile("fast", max_examples=10, deadline=None)
hypothesis.settings.load_profile("default")

NATURALS = InitialGeneration.naturals()
SQUAREFREE = InitialGeneration.squarefree_kernels()


@pytest.fixture(scope="session")
def edge_n():
    """Naturals west edge; 8200 terms covers W(2**13 + 1) and the UO listing."""
    return west_edge(NATURALS, 8200)


@pytest.fixture(scope="session")
def edge_p():
    return west_edge(SQUAREFREE, 8200)


# -- one PASS/FAIL line per acceptance criterion ------------------------------

_CRITERIA: dict[int, bool] = {}
_CRITERION = re.compile(r"test_criterion_(\d+)_")


def pytest_runtest_logreport(report):
    m = _CRITERION.search(report.nodeid)
    if not m:
        return
    n = int(m.group(1))
    if report.failed:
        _CRITERIA[n] = False
    elif report.when == "call":
        _CRITERIA.setdefault(n, True)


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_CRITERIA):
        terminalreporter.write_line(f"criterion {n:02d}: {'PASS' if _CRITERIA[n] else 'FAIL'}")
