"""One test per acceptance criterion; run with ``-s`` to see the PASS/FAIL lines."""

import pytest

from painleve_lab.acceptance import CRITERIA


@pytest.mark.parametrize("number", sorted(CRITERIA))
def test_criterion(number):
    result = CRITERIA[number]()
    print(result.line())
    assert result.passed, result.line()
