"""The ten acceptance criteria, one test each.  The one-line result of
every criterion is printed in the terminal summary (see conftest.py)."""
import pytest

from typecount.acceptance import SUITES, run_one, suite_names


@pytest.mark.parametrize("name", suite_names())
def test_criterion(name, record_property):
    num, fn = SUITES[name]
    result = run_one(num, name, fn)
    record_property("acceptance", f"{result.line()} ({result.seconds:.1f}s)")
    assert result.passed, result.detail
