import pytest

_results = []


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker and report.when == "call":
        title = marker.args[1]
        callspec = getattr(item, "callspec", None)
        if callspec is not None:
            title += f" [{callspec.id}]"
        _results.append((marker.args[0], title, report.passed, report.duration))


def pytest_terminal_summary(terminalreporter):
    if not _results:
        return
    terminalreporter.section("acceptance criteria")
    for number, title, passed, duration in sorted(_results):
        status = "PASS" if passed else "FAIL"
        terminalreporter.write_line(f"[{status}] criterion {number}: {title} ({duration:.2f}s)")
