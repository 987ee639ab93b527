import pytest

_VERDICTS = pytest.StashKey[dict]()


def pytest_configure(config):
    config.stash[_VERDICTS] = {}


@pytest.fixture
def verdict(request):
    """Record a one-line pass/fail result for an acceptance criterion.

    The line is taken from the test's ``criterion`` marker; the outcome is
    filled in after the call phase.
    """
    mark = request.node.get_closest_marker("criterion")
    request.config.stash[_VERDICTS][request.node.nodeid] = [mark.args[0], mark.args[1], None, ""]
    detail = []
    yield detail
    request.config.stash[_VERDICTS][request.node.nodeid][3] = "; ".join(detail)


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    entry = item.config.stash[_VERDICTS].get(item.nodeid)
    if entry is not None and report.when == "call":
        entry[2] = report.passed


def pytest_terminal_summary(terminalreporter, config):
    rows = sorted(config.stash[_VERDICTS].values(), key=lambda r: r[0])
    if not rows:
        return
    terminalreporter.section("acceptance criteria")
    for number, title, passed, detail in rows:
        status = "PASS" if passed else "FAIL"
        line = f"[{status}] criterion {number}: {title}"
        if detail:
            line += f" ({detail})"
        terminalreporter.write_line(line)
