"""The full identity suite at the default caps, one test per identity instance."""

import pytest

from qshift.lie import LieAlgebraSpec, build_spec
from qshift.quasi import ShiftMatrix
from qshift.suites import IDENTITY_SPECS, identity_suite

CHECKS = identity_suite([build_spec(f, N) for f, N in IDENTITY_SPECS])


def _label(check):
    parts = []
    for a in check.args:
        if isinstance(a, LieAlgebraSpec):
            parts.append(a.name.replace(" ", ""))
        elif isinstance(a, ShiftMatrix):
            parts.append(a.spec.name.replace(" ", ""))
        elif isinstance(a, (int, str)):
            parts.append(str(a))
    return f"{check.func.__name__}[{','.join(parts)}]"


@pytest.mark.parametrize("check", CHECKS, ids=_label)
def test_identity(check):
    rep = check()
    assert rep.passed, f"{rep.check}: {rep.witness}"
