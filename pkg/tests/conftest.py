import time

import pytest

SUITE_BUDGET = 300.0


def pytest_configure(config):
    config._acceptance_lines = []
    config._suite_start = time.perf_counter()


@pytest.fixture
def acceptance(request):
    """Record one pass/fail line per acceptance criterion and assert it."""
    lines = request.config._acceptance_lines

    def report(number, ok, detail=""):
        line = f"criterion {number:>2}: {'PASS' if ok else 'FAIL'}  {detail}".rstrip()
        lines.append(line)
        print(line)
        assert ok, line

    return report


def pytest_terminal_summary(terminalreporter, config):
    lines = getattr(config, "_acceptance_lines", [])
    if not lines:
        return
    elapsed = time.perf_counter() - config._suite_start
    terminalreporter.section("acceptance criteria")
    for line in sorted(lines, key=lambda s: int(s.split()[1].rstrip(":"))):
        terminalreporter.write_line(line)
    terminalreporter.write_line(
        f"session runtime {elapsed:.1f} s "
        f"({'within' if elapsed < SUITE_BUDGET else 'OVER'} the {SUITE_BUDGET:.0f} s budget)")
