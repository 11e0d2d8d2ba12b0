"""Acceptance battery: every numbered criterion, one line per result.

Each test invokes the shared implementation in :mod:`pleatlab.suite`
(the same records back ``pleatlab verify-suite``) and prints its
pass/fail line immediately, so a full run shows twelve status lines.
"""

import pytest

from pleatlab import suite


@pytest.mark.parametrize(
    "index,name,description,fn",
    [
        (i, name, desc, fn)
        for i, (name, desc, fn) in enumerate(suite.CRITERIA, start=1)
    ],
    ids=[name for name, _, _ in suite.CRITERIA],
)
def test_acceptance_criterion(index, name, description, fn, capsys):
    record = fn()
    status = "PASS" if record["passed"] else "FAIL"
    with capsys.disabled():
        print(f"\n[{status}] {index:2d} {name}: {description}")
    assert record["passed"], record["details"]
