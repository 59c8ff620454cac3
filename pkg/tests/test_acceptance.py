"""Acceptance gate: run every release criterion and report one line each.

Run with ``pytest tests/test_acceptance.py -v -s`` to see the per-criterion
pass/fail lines as they complete.  The same checks back the ``teich selftest``
CLI subcommand.
"""

import pytest

from teich.selftest import CRITERIA


@pytest.mark.parametrize("criterion", CRITERIA, ids=lambda c: c.__name__)
def test_criterion(criterion):
    result = criterion(quick=False)
    status = "PASS" if result.passed else "FAIL"
    print("criterion %2d  %-22s %s  (%.1fs) %s"
          % (result.number, result.name, status, result.seconds, result.detail))
    assert result.passed, "criterion %d (%s): %s" % (
        result.number, result.name, result.detail)
