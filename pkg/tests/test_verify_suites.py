"""Every oracle-backed property suite must be clean."""

import pytest

from heckezeros import verify


@pytest.mark.parametrize("name", sorted(verify.SUITES))
def test_suite_clean(name):
    reports = verify.run_suite(name)
    failures = [str(r) for r in reports if not r.passed]
    assert not failures, "\n".join(failures)
