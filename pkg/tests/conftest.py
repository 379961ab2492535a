import pytest

_results: dict[int, list[str]] = {}
_titles: dict[int, str] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion a test belongs to")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    number, title = marker.args
    _titles[number] = title
    if report.when == "call" or (report.when == "setup" and not report.passed):
        if hasattr(report, "wasxfail"):
            state = "xfail"
        else:
            state = report.outcome
        _results.setdefault(number, []).append(f"{item.name}:{state}")


def pytest_terminal_summary(terminalreporter):
    if not _results:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_results):
        states = _results[number]
        ok = all(s.endswith(":passed") for s in states)
        failed = [s.rsplit(":", 1)[0] for s in states if not s.endswith(":passed")]
        line = f"criterion {number}: {'PASS' if ok else 'FAIL'}  {_titles[number]}"
        if failed:
            line += f"  (not passing: {', '.join(failed)})"
        terminalreporter.write_line(line)
