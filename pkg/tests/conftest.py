import os
import sys

import pytest

sys.path.insert(0, os.path.dirname(__file__))

_criteria = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n, text): acceptance criterion")


def pytest_runtest_makereport(item, call):
    mark = item.get_closest_marker("criterion")
    if mark is None or call.when != "call":
        return
    n, text = mark.args
    ok = call.excinfo is None
    prev = _criteria.get(n, (True, text))
    _criteria[n] = (prev[0] and ok, text)


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_criteria):
        ok, text = _criteria[n]
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {n}. {text}")


@pytest.fixture
def triangle():
    from hetn2v import HetMultigraph

    # a-b type0, b-c type0, c-a type1; a,b type 0 and c type 1
    return HetMultigraph.from_edges(
        [0, 1, 2], [1, 2, 0], [0, 0, 1], [1.0, 2.0, 3.0], [0, 0, 1],
        node_names=["a", "b", "c"],
    )
