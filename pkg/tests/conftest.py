import pytest


def pytest_configure(config):
    config._acceptance_lines = []


@pytest.fixture
def criterion(request):
    """Record one PASS/FAIL line for an acceptance criterion and print it at the end of the run."""

    def record(number, ok, detail, elapsed, limit):
        within = elapsed <= limit
        verdict = "PASS" if ok and within else "FAIL"
        line = (f"criterion {number:2d}: {verdict}  {detail}  "
                f"[{elapsed:.1f} s, limit {limit:.0f} s{'' if within else ' EXCEEDED'}]")
        print(line)
        request.config._acceptance_lines.append((number, line))
        return ok and within

    return record


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = getattr(config, "_acceptance_lines", [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for _, line in sorted(lines):
            terminalreporter.write_line(line)
