"""Shared pytest plumbing for the acceptance report.

Acceptance tests record one line per criterion; the lines are echoed in a
terminal section after the run so every pass/fail verdict is visible even
under output capture.
"""

import pytest

_CRITERION_LINES: list[tuple[int, str]] = []


def _record(index: int, name: str, passed: bool, detail: str) -> None:
    verdict = "PASS" if passed else "FAIL"
    line = f"[criterion {index}] {verdict} {name}: {detail}"
    _CRITERION_LINES.append((index, line))
    print(line)


@pytest.fixture(scope="session")
def criterion_report():
    return _record


def pytest_terminal_summary(terminalreporter):
    if not _CRITERION_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for _, line in sorted(_CRITERION_LINES):
        terminalreporter.write_line(line)
