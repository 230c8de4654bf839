"""The eleven acceptance criteria, one test each, with a PASS/FAIL line per criterion."""

from __future__ import annotations

import pytest

from skein.verify import CRITERIA, TIME_LIMITS, run_check

RESULTS: dict[str, str] = {}


@pytest.mark.parametrize("key", CRITERIA)
def test_criterion(key, capsys):
    res = run_check(key)
    RESULTS[key] = res.line()
    with capsys.disabled():
        print(f"\n{res.line()}")
    if key in TIME_LIMITS:
        assert res.seconds < TIME_LIMITS[key]
    assert res.passed, res.detail


def test_every_criterion_is_wired():
    assert len(CRITERIA) == 11
