import mpmath
import pytest

_outcomes: dict = {}
_titles: dict = {}


@pytest.fixture(autouse=True)
def _mp_digits():
    # library results carry 40 digits; compare them at the same precision
    with mpmath.workdps(40):
        yield


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None or rep.when != "call":
        return
    number, title = mark.args
    _titles[number] = title
    _outcomes.setdefault(number, []).append((item.name, rep.passed))


def pytest_terminal_summary(terminalreporter):
    if not _outcomes:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_outcomes):
        parts = _outcomes[number]
        ok = all(passed for _, passed in parts)
        failed = [name for name, passed in parts if not passed]
        line = f"criterion {number:>2}: {'PASS' if ok else 'FAIL'}  {_titles[number]}"
        if failed:
            line += f"  (failing: {', '.join(failed)})"
        terminalreporter.write_line(line)
