"""Every exit criterion at its stated tolerance, one line per criterion.

The lines are printed as they run (visible with ``-s``) and repeated in the
terminal summary by ``conftest.py``.
"""

import pytest

from heckoid.acceptance import CRITERIA, RunConfig

RESULTS = {}


@pytest.mark.parametrize("criterion", CRITERIA, ids=[f"criterion_{c.number}" for c in CRITERIA])
def test_criterion(criterion):
    result = criterion(RunConfig())
    RESULTS[result.number] = result
    print(result.line())
    assert result.passed, result.detail
