import pytest

from gfc.verify import SUITES, VerifyReport, _check, run_suite


def test_check_turns_exceptions_into_failures():
    r = _check("boom", 1, "published", lambda: 1 / 0)
    assert not r.passed
    assert r.computed.startswith("error: ZeroDivisionError")
    assert r.line().startswith("FAIL boom")


def test_exact_equality_only():
    assert not _check("close", 1, "published", lambda: 1.0000001).passed
    assert _check("same", {2: 1}, "derived", lambda: {2: 1}).passed


@pytest.mark.parametrize("name", sorted(SUITES))
def test_suite_passes(name):
    reports = run_suite(name)
    assert reports and all(isinstance(r, VerifyReport) for r in reports)
    failed = [r.line() for r in reports if not r.passed]
    assert failed == []


def test_tables_suite_size():
    assert len(run_suite("tables")) >= 20
