"""Acceptance criteria 1-8, each at its stated tolerance.

Every criterion is one test.  Its rows are also collected into ``SUMMARY``,
which ``conftest.py`` prints as one PASS/FAIL line per criterion at the end
of the run.  Criterion 8 is a report: a disagreement is a finding, not a
failure.
"""

import time

import pytest

from appell_vertex import checks

SUMMARY = {}

CRITERIA = {
    1: ("F4 boundary reduction to 2F1", checks.check_boundary_reduction),
    2: ("F4 PDE residuals", checks.check_pde),
    3: ("four-term vs mechanical three-term reduction", checks.check_four_vs_reduced),
    4: ("omega->2 pole cancellation", checks.check_pole_cancellation),
    5: ("oracle permutation and scaling", checks.check_oracle),
    6: ("two-loop bubble composition", checks.check_two_loop),
    7: ("Y/Delta transform and current pattern", checks.check_networks),
    8: ("printed three-term form vs reduction (report)", checks.printed_vs_reduced_report),
}


@pytest.mark.parametrize("criterion", sorted(CRITERIA))
def test_criterion(criterion):
    title, fn = CRITERIA[criterion]
    start = time.perf_counter()
    rows = fn()
    elapsed = time.perf_counter() - start
    passed = all(r.passed for r in rows)
    SUMMARY[criterion] = (title, passed, elapsed, rows)
    for row in rows:
        print(row.line())
    failed = [r.line() for r in rows if not r.passed]
    assert passed, "\n".join(failed)
