"""Acceptance gate: every criterion at its stated tolerance, one line each.

Run with ``pytest -s tests/test_acceptance.py`` to see the PASS/FAIL lines,
or ``sawkit verify`` for the same output outside pytest.
"""

import pytest

from sawkit.acceptance import CRITERIA


@pytest.mark.parametrize("number,name,func", CRITERIA, ids=[f"criterion_{n:02d}" for n, _, _ in CRITERIA])
def test_criterion(number, name, func):
    passed, details = func()
    print(f"{'PASS' if passed else 'FAIL'}  criterion {number:2d}  {name}: {details}")
    assert passed, f"criterion {number} ({name}): {details}"
