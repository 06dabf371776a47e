"""Acceptance criteria 1-9, each at its stated tolerance and time budget."""
import pytest

from spinor_em.audits import ACCEPTANCE


@pytest.mark.parametrize("num,name,audit,limit", ACCEPTANCE, ids=[f"criterion_{c[0]}" for c in ACCEPTANCE])
def test_criterion(num, name, audit, limit, capsys):
    res = audit()
    within = limit is None or res.seconds < limit
    status = "PASS" if res.passed and within else "FAIL"
    budget = f" (limit {limit:g}s)" if limit is not None else ""
    with capsys.disabled():
        print(f"\ncriterion {num} [{name}]: {status}  {res.seconds:.2f}s{budget}")
    assert res.passed, res.metrics
    assert within, f"took {res.seconds:.2f}s, limit {limit}s"
