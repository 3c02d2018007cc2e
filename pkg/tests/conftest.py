import pytest

import qwalknet
from qwalknet import from_edge_list, karate_club


def pytest_addoption(parser):
    parser.addoption("--backend", choices=["compiled", "python"], default=None,
                     help="kernel backend for tests that do not pin one (default: auto)")


def pytest_configure(config):
    name = config.getoption("--backend")
    if name is not None:
        qwalknet.set_backend(name)


@pytest.fixture(params=qwalknet.available_backends())
def backend(request):
    """Run the test once per available kernel backend."""
    previous = qwalknet.get_backend()
    qwalknet.set_backend(request.param)
    yield request.param
    qwalknet.set_backend(previous)


def cycle(n):
    return from_edge_list([(j, j % n + 1) for j in range(1, n + 1)])


def star(n):
    return from_edge_list([(1, j) for j in range(2, n + 1)])


def path(n):
    return from_edge_list([(j, j + 1) for j in range(1, n)])


@pytest.fixture(scope="session")
def karate():
    return karate_club()


_ACCEPTANCE = []


@pytest.fixture
def criterion(request):
    """Record a pass/fail line for an acceptance criterion.

    Usage: ``criterion("C1", "description", detail)`` once the checks passed;
    a test that fails before calling it is reported as FAIL.
    """
    entry = {"id": request.node.name, "label": None, "detail": "", "passed": False}
    _ACCEPTANCE.append(entry)

    def record(label, detail=""):
        entry["label"] = label
        entry["detail"] = detail

    yield record
    rep = getattr(request.node, "rep_call", None)
    entry["passed"] = bool(rep is not None and rep.passed)


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    if rep.when == "call":
        item.rep_call = rep


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for e in _ACCEPTANCE:
        status = "PASS" if e["passed"] else "FAIL"
        label = e["label"] or e["id"]
        terminalreporter.write_line(f"{status}  {label}  {e['detail']}".rstrip())
