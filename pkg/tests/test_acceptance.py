"""Acceptance gate: one test and one printed pass/fail line per criterion.

Every value compared here is exact (integers, rationals, cyclotomic
integers); the stated tolerance for each criterion is therefore zero.
"""

import pytest

from heckezero import acceptance


@pytest.mark.parametrize(
    "criterion", acceptance.ALL_CRITERIA,
    ids=[f"criterion_{i}" for i in range(1, len(acceptance.ALL_CRITERIA) + 1)])
def test_criterion(criterion, capsys):
    result = criterion()
    with capsys.disabled():
        print(result.line())
    assert result.passed, result.detail
    if result.time_limit is not None:
        assert result.elapsed <= result.time_limit, (
            f"exceeded {result.time_limit}s limit: {result.elapsed:.2f}s")
