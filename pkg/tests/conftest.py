import contextlib

import pytest

_RESULTS = pytest.StashKey[dict]()


def pytest_configure(config):
    config.stash[_RESULTS] = {}


@pytest.fixture
def criterion(request):
    """Context manager recording one PASS/FAIL line per acceptance criterion."""
    results = request.config.stash[_RESULTS]

    @contextlib.contextmanager
    def run(number, title):
        try:
            yield
        except BaseException as exc:
            results[number] = f"FAIL criterion {number}: {title} ({type(exc).__name__}: {exc})"
            print(results[number])
            raise
        results[number] = f"PASS criterion {number}: {title}"
        print(results[number])

    return run


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    results = config.stash[_RESULTS]
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(results):
        terminalreporter.write_line(results[number])
