import pytest
from hypothesis import settings

settings.register_profile("repo", derandomize=True, deadline=None)
settings.load_profile("repo")

CRITERIA_KEY = pytest.StashKey[dict]()


@pytest.fixture
def criterion_log(request):
    """Maps criterion id to its one-line outcome, printed at session end."""
    return request.config.stash.setdefault(CRITERIA_KEY, {})


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = config.stash.get(CRITERIA_KEY, {})
    if not lines:
        return
    terminalreporter.section("acceptance criteria")
    for cid in sorted(lines):
        terminalreporter.write_line(lines[cid])
