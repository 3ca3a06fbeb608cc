import numpy as np
import pytest


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import SUMMARY
    except ImportError:
        return
    if not SUMMARY:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for criterion in sorted(SUMMARY):
        title, passed, elapsed, rows = SUMMARY[criterion]
        tag = "PASS" if passed else "FAIL"
        tr.write_line(f"{tag} criterion {criterion}: {title} ({elapsed:.1f}s)")
        for row in rows:
            tr.write_line("    " + row.line())
