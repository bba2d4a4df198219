"""Shared pytest plumbing for the suite.

Collects one result line per acceptance criterion (recorded by
``tests/test_acceptance.py``) and prints them in a dedicated section at
the end of the run, so the per-criterion verdicts are visible even on an
all-green run.
"""

_CRITERION_LINES = []


def record_criterion(name: str, passed: bool, detail: str) -> None:
    """Store one pass/fail line for the end-of-run summary."""
    verdict = "PASS" if passed else "FAIL"
    _CRITERION_LINES.append(f"{name} {verdict} - {detail}")


def pytest_terminal_summary(terminalreporter):
    if _CRITERION_LINES:
        terminalreporter.section("acceptance criteria")
        for line in _CRITERION_LINES:
            terminalreporter.write_line(line)
