from fractions import Fraction

import pytest
import sympy

from bielliptic_seshadri.certificates import CertKind
from bielliptic_seshadri.constraints import xu_floor_multi
from bielliptic_seshadri.harbourne_roe import (
    AdmissibleTriple,
    Condition,
    CriterionFailed,
    HrReport,
    check_condition,
    c2_floor_for,
    enumerate_triples,
    format_hr_table,
    hr_lower_bound,
    hr_table_rows,
    polynomial_check,
    verify_criterion,
)
from bielliptic_seshadri.seshadri import upper_bound_multipoint
from bielliptic_seshadri.surd import BoundValue
from bielliptic_seshadri.surfaces import DivisorClass, surface

# (r, m) -> possible k, transcribed row by row from the published table
REFERENCE_TABLE = {
    (2, 1): [1], (2, 2): [1, -1], (2, 3): [1, -1, 2], (2, 4): [1, -1, 2],
    (2, 5): [1, -1, 2, -2, 3], (2, 6): [1, -1, 2, -2, 3], (2, 7): [1, -1, 2, -2, 3],
    (3, 1): [1], (3, 2): [1, -1], (3, 3): [1, -1, 2],
    (4, 1): [1], (4, 2): [1, -1],
    (5, 1): [1], (6, 1): [1], (7, 1): [1], (8, 1): [1],
}

L11 = DivisorClass(1, 1)


def cond2(r, m, k):
    return AdmissibleTriple(r, m, k, Condition.COND2)


def test_table_matches_published_rows():
    produced = {(r, m): ks for r_ in range(2, 9) for r, m, ks in hr_table_rows(r_, 8)}
    assert produced == REFERENCE_TABLE
    assert len(produced) == 16  # 7 + 3 + 2 + 4 rows


def test_enumerate_examples():
    r2 = [t.k for t in enumerate_triples(2, 8) if t.condition is Condition.COND2 and t.m == 5]
    assert r2 == [1, -1, 2, -2, 3]
    assert [(t.m, t.k) for t in enumerate_triples(8, 8) if t.condition is Condition.COND2] == [(1, 1)]
    assert {(t.m, t.k) for t in enumerate_triples(4, 8) if t.condition is Condition.COND2} == {
        (1, 1), (2, 1), (2, -1)}
    cond1 = [t.m for t in enumerate_triples(5, 8) if t.condition is Condition.COND1]
    assert cond1 == list(range(1, 8))


@pytest.mark.parametrize("r", range(9, 40))
def test_condition_two_vacuous_beyond_eight(r):
    assert all(t.condition is Condition.COND1 for t in enumerate_triples(r, 8))


def test_enumeration_matches_defining_inequalities():
    for r in range(2, 12):
        for mu in range(1, 14):
            got = {(t.m, t.k) for t in enumerate_triples(r, mu) if t.condition is Condition.COND2}
            want = {
                (m, k)
                for m in range(1, mu + 1)
                for k in range(-50, 51)
                if m < Fraction(mu, r - 1) and k != 0
                and k * k < Fraction(r, r - 1) * min(m, m + k)
            }
            assert got == want


def test_c2_floors():
    assert c2_floor_for(AdmissibleTriple(5, 1, 0, Condition.COND1)) == 12
    assert c2_floor_for(AdmissibleTriple(2, 3, 0, Condition.COND1)) == 17
    assert c2_floor_for(cond2(3, 2, -1)) == 9 == xu_floor_multi([2, 2, 1], 2)
    for r in range(2, 9):
        assert c2_floor_for(cond2(r, 1, 1)) == r + 3
    for (r, m), ks in REFERENCE_TABLE.items():
        for k in ks:
            if m > 1:
                assert c2_floor_for(cond2(r, m, k)) == (r - 1) * m * m + (m + k) ** 2 - m + 2


def test_polynomial_examples_against_unreordered_difference():
    def difference(r, m, k):
        return 8 * r * r * ((r - 1) * m * m + (m + k) ** 2 - m + 2) - (m * r + k) ** 2 * (8 * r - 1)

    for args, value in [((2, 2, 1), 41), ((2, 2, -1), 25), ((3, 3, 2), 241)]:
        assert polynomial_check(*args) == value == difference(*args)


def test_polynomial_identity_symbolic():
    r, m, k = sympy.symbols("r m k")
    reordered = polynomial_check(r, m, k)
    original = 8 * r**2 * ((r - 1) * m**2 + (m + k) ** 2 - m + 2) - (m * r + k) ** 2 * (8 * r - 1)
    assert sympy.expand(reordered - original) == 0


def test_polynomial_nonnegative_on_table():
    for (r, m), ks in REFERENCE_TABLE.items():
        if m > 1:
            for k in ks:
                assert polynomial_check(r, m, k) >= 0


def test_check_condition_examples():
    ok, trace = check_condition(AdmissibleTriple(2, 1, 0, Condition.COND1), 2, 8, 2)
    assert ok and any("h0(C) = C^2/2" in line for line in trace)
    assert check_condition(cond2(3, 1, 1), 3, 8, 2)[0]
    ok, trace = check_condition(cond2(2, 7, 3), 2, 8, 2)
    assert ok and any(str(polynomial_check(2, 7, 3)) in line for line in trace)


def test_cond1_inequalities_exhaustive():
    for r in range(2, 101):
        assert 2 * r + 2 >= r - Fraction(1, 8)
        for m in range(2, 8):
            assert r * m * m - m + 2 >= m * m * (r - Fraction(1, 8))


def test_hr_lower_bound_examples():
    c = hr_lower_bound(surface(2), L11, 2)
    assert c.kind is CertKind.LOWER
    assert c.value == BoundValue.sqrt(Fraction(15, 16))
    assert hr_lower_bound(surface(5), L11, 8).value == BoundValue.sqrt(Fraction(63, 256))
    assert hr_lower_bound(surface(1), DivisorClass(2, 3), 3).value == BoundValue.sqrt(Fraction(23, 6))


@pytest.mark.parametrize("tid", range(1, 8))
def test_mu8_passes_everywhere(tid):
    for r in range(2, 20):
        hr_lower_bound(surface(tid), DivisorClass(2, 5), r)


def test_bound_below_upper_and_decreasing():
    for L in [L11, DivisorClass(2, 3), DivisorClass(7, 1)]:
        previous = None
        for r in range(2, 60):
            lower = hr_lower_bound(surface(1), L, r).value
            assert lower < upper_bound_multipoint(L, r).value
            if previous is not None:
                assert lower < previous
            previous = lower


def test_other_mu_reports_failing_triples():
    report = verify_criterion(2, 9, 2)
    assert not report.passed and report.bound is None
    failed = {(c.triple.condition, c.triple.m) for c in report.checks if not c.passed}
    # rm^2 - m + 2 >= m^2 (r - 1/9)  <=>  (m-3)(m-6) >= 0
    assert {(Condition.COND1, 4), (Condition.COND1, 5)} <= failed
    with pytest.raises(CriterionFailed) as exc:
        hr_lower_bound(surface(2), L11, 2, mu=9)
    assert "cond1(r=2, m=4" in str(exc.value)


def test_report_round_trip():
    report = hr_lower_bound(surface(3), L11, 3).report
    assert HrReport.from_dict(report.to_dict()) == report
    assert report.to_dict()["passed"]


def test_text_table_layout():
    text = format_hr_table([2], 8)
    assert "5         | 1,-1,2,-2,3" in text
    assert text.splitlines()[0] == "r | m<8/(r-1) | possible k"
