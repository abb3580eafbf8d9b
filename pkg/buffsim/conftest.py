"""pytest glue: the test scripts' `test_*(result)` functions get a tracker."""

import pytest

from checks.result import TestResult


@pytest.fixture
def result():
    tracker = TestResult(quiet=True)
    yield tracker
    if tracker.failed:
        pytest.fail("; ".join(f"{name}: {error}" for name, error in tracker.errors))
