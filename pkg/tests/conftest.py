import pytest

from squareflux import builders
from squareflux.homology import build_frame

_RESULTS_KEY = pytest.StashKey[list]()


@pytest.fixture(scope="session")
def torus():
    return builders.torus()


@pytest.fixture(scope="session")
def g2():
    return builders.genus2_block()


@pytest.fixture(scope="session")
def g5():
    return builders.genus5_surface()


@pytest.fixture(scope="session")
def torus_frame(torus):
    return build_frame(torus)


@pytest.fixture(scope="session")
def g2_frame(g2):
    return build_frame(g2)


@pytest.fixture(scope="session")
def g5_frame(g5):
    return build_frame(g5)


def pytest_configure(config):
    config.stash[_RESULTS_KEY] = []


class _Criterion:
    def __init__(self):
        self.label = ""
        self.detail = ""

    def __call__(self, label):
        self.label = label


@pytest.fixture
def criterion(request):
    """Record a named acceptance criterion; the outcome is printed at the end."""
    crit = _Criterion()
    yield crit
    rep = getattr(request.node, "rep_call", None)
    ok = rep is not None and rep.passed
    label = crit.label or request.node.name
    if crit.detail:
        label += f" [{crit.detail}]"
    request.config.stash[_RESULTS_KEY].append((label, ok))


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    if rep.when == "call":
        item.rep_call = rep


def pytest_terminal_summary(terminalreporter, config):
    results = config.stash.get(_RESULTS_KEY, [])
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for label, ok in results:
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {label}")
