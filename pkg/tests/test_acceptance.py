"""Acceptance gate: every criterion runs at its pinned size and must pass.

Run with `pytest tests/test_acceptance.py -v` (or `fourcolor suite`); one
pass/fail line prints per criterion.
"""

import pytest

from fourcolor import suite


@pytest.mark.parametrize("cid", [c for c, _, _ in suite.CRITERIA])
def test_criterion(cid):
    result = suite.run_one(cid)
    print(result.line())
    assert result.passed, result.detail
