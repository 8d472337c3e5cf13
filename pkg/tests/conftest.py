import random

import pytest
from hypothesis import HealthCheck, settings

from multimatroid import io

settings.register_profile(
    "repo",
    deadline=None,
    max_examples=40,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("repo")


@pytest.fixture
def example():
    """Load a bundled example document by name."""
    def load(name):
        return io.bundled(name)[1]
    return load


@pytest.fixture
def rng():
    return random.Random(20261016)


_criteria: dict[str, str] = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    marker = item.get_closest_marker("acceptance")
    if marker is None:
        return
    title = marker.kwargs.get("title", item.name)
    if rep.failed or (rep.when == "call" and title not in _criteria):
        _criteria[title] = "PASS" if rep.passed else "FAIL"


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for title, verdict in _criteria.items():
        terminalreporter.write_line(f"{verdict}  {title}")
