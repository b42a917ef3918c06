import json

import pytest

from excy import verify
from excy.asymptotics import alpha
from excy.verify import FAIL, INCONCLUSIVE, PASS, run_suite, scan_gcd_conjecture, telescoping_sum
from excy.altsum import index_exponents, mld_exponents

from perturbed import perturbed_reports


@pytest.mark.parametrize("name", verify.SUITES)
def test_suites_pass_small(name):
    report = run_suite(name, max_n=8)
    assert report.checks
    assert report.passed, [c.to_dict() for c in report.failures + report.inconclusive]


def test_product_counts():
    report = verify.verify_product_formulas(4)
    # product for k = 0..r+1, qk for k = 0..r
    assert len(report.checks) == sum((r + 2) + (r + 1) for r in range(1, 5))


def test_telescoping_terms_sum_to_zero():
    for n in range(2, 12):
        e = mld_exponents(n)
        total, terms = telescoping_sum(e.b, e.last_exponent, n)
        assert total == 0 and sum(terms) == 0
        e = index_exponents(n)
        assert telescoping_sum(e.b, e.last_exponent, n, index=True)[0] == 0


def test_every_negative_control_fails_with_witness():
    for name, report in perturbed_reports().items():
        assert not report.passed, name
        assert report.failures, name
        assert all(c.witness for c in report.failures), name


def test_fixed_wide_enclosure_is_inconclusive_not_wrong():
    report = verify.verify_asymptotic_bounds(14, enclosure=alpha(6))
    assert not report.failures
    assert report.inconclusive
    assert all(c.note for c in report.inconclusive)


def test_adaptive_enclosure_decides_through_14():
    report = verify.verify_asymptotic_bounds(14)
    assert report.passed
    assert float(report.params["max_alpha_width"]) < 1e-6


def test_json_is_deterministic():
    a = run_suite("index-identity", max_n=6).to_json()
    b = run_suite("index-identity", max_n=6).to_json()
    assert a == b
    doc = json.loads(a)
    assert doc["summary"] == {PASS: 10, FAIL: 0, INCONCLUSIVE: 0}


def test_scan_small_dimensions():
    seen = []
    report, entries = scan_gcd_conjecture(8, on_result=lambda e: seen.append(e["n"]))
    assert report.passed
    assert seen == list(range(2, 9))
    assert entries[1]["m_prime"] == {"bits": 9, "decimal": "493"}


def test_scan_parallel_keeps_order():
    report, entries = scan_gcd_conjecture(7, parallelism=2)
    assert [e["n"] for e in entries] == list(range(2, 8))
    assert report.passed


def test_scan_summarizes_huge_values():
    e = verify.gcd_entry(17)
    assert "sha256" in e["m_prime"] and len(e["m_prime"]["low_digits"]) == 30
    full = verify.gcd_entry(17, full=True)
    assert full["m_prime"]["decimal"].endswith(e["m_prime"]["low_digits"])


def test_bad_limits():
    with pytest.raises(ValueError):
        verify.verify_pair_degree(1)
    with pytest.raises(ValueError):
        scan_gcd_conjecture(1)
    with pytest.raises(ValueError):
        run_suite("nonsense")
