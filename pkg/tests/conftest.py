import pytest
from hypothesis import settings

from inatt import Agent, CostSpec

# derandomized so that repeated runs explore the same examples
settings.register_profile("repro", derandomize=True, deadline=None, max_examples=200)
settings.load_profile("repro")

ACCEPTANCE_KEY = pytest.StashKey[list]()


@pytest.fixture
def quad():
    return CostSpec.quadratic()


@pytest.fixture
def shannon():
    return CostSpec.shannon()


@pytest.fixture
def agent1():
    return Agent(w=1.0)


CATALOG = {
    "quadratic": CostSpec.quadratic(),
    "shannon": CostSpec.shannon(),
    "tsallis-0.5": CostSpec.tsallis(0.5),
    "tsallis-2": CostSpec.tsallis(2.0),
    "tsallis-3": CostSpec.tsallis(3.0),
}


@pytest.fixture(params=sorted(CATALOG))
def catalog_cost(request):
    return CATALOG[request.param]


@pytest.fixture
def acceptance_log(request):
    """Collects one PASS/FAIL line per acceptance criterion for the terminal summary."""
    lines = request.config.stash.setdefault(ACCEPTANCE_KEY, [])
    return lines.append


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = config.stash.get(ACCEPTANCE_KEY, [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
