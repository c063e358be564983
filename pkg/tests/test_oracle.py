import pytest

from bielliptic_seshadri.constraints import CurveCandidate
from bielliptic_seshadri.oracle import (
    OracleVerdict,
    SearchWindow,
    replay_contradiction,
    sweep,
    verify_certificate,
)
from bielliptic_seshadri.seshadri import (
    epsilon_lower_types2to7,
    epsilon_type11_at_point,
    upper_bound_multipoint,
)
from bielliptic_seshadri.surd import BoundValue
from bielliptic_seshadri.surfaces import DivisorClass, PointSpec, surface

L11 = DivisorClass(1, 1)
VG = PointSpec.very_general()
ARB = PointSpec.arbitrary()
FOUR_THIRDS = BoundValue.ratio(4, 3)


def classes(hits):
    return {(h.candidate.cls, h.candidate.mults) for h in hits}


def test_type2_very_general_four_thirds():
    v = sweep(surface(2), L11, [VG], SearchWindow(8, 8, 6), FOUR_THIRDS)
    assert v.violations == ()
    # (2,2) through a triple point and (4,4) through a 6-fold point attain 4/3
    assert classes(v.achievers) == {(DivisorClass(2, 2), (3,)), (DivisorClass(4, 4), (6,))}


def test_four_thirds_needs_xu():
    v = sweep(surface(2), L11, [VG], SearchWindow(8, 8, 6), FOUR_THIRDS, use_xu=False)
    assert (DivisorClass(1, 1), (2,)) in classes(v.violations)


def test_type1_achiever_set():
    L = DivisorClass(3, 2)
    v = sweep(surface(1), L, [ARB], SearchWindow(8, 8, 6), BoundValue.rational(2))
    assert v.violations == ()
    assert classes(v.achievers) == {(DivisorClass(1, 0), (1,))}
    # with a <= b the vertical fibre B is the achiever
    v = sweep(surface(1), DivisorClass(2, 3), [ARB], SearchWindow(8, 8, 6), BoundValue.rational(2))
    assert (DivisorClass(0, 1), (1,)) in classes(v.achievers)


def test_type5_singular_fibre():
    v = sweep(surface(5), L11, [PointSpec.singular(3)], SearchWindow(8, 8, 6), BoundValue.rational(1))
    assert v.violations == ()
    assert (DivisorClass(1, 0), (1,)) in classes(v.achievers)


def test_verify_exact_certificate_finds_witness():
    s = surface(7)
    cert = epsilon_type11_at_point(s, ARB)
    v = verify_certificate(cert, s, L11, [ARB], SearchWindow(8, 8, 8))
    assert v.ok and v.witness_found
    odd = epsilon_type11_at_point(s, PointSpec.general_fiber())
    v = verify_certificate(odd, s, L11, [PointSpec.general_fiber()], SearchWindow(8, 8, 8))
    assert v.witness_found
    assert (DivisorClass(0, 1), (1,)) in classes(v.achievers)


def test_verify_lower_and_upper():
    s = surface(6)
    L = DivisorClass(2, 2)
    v = verify_certificate(epsilon_lower_types2to7(s, L), s, L, [ARB], SearchWindow(8, 8, 8))
    assert v.violations == () and v.witness_found is None
    v = verify_certificate(upper_bound_multipoint(L11, 1), surface(2), L11, [ARB], SearchWindow(8, 8, 8))
    assert not v.applicable and v.ok


def test_false_claim_is_caught():
    v = sweep(surface(1), DivisorClass(3, 2), [ARB], SearchWindow(4, 4, 4), BoundValue.ratio(5, 2))
    assert (DivisorClass(1, 0), (1,)) in classes(v.violations)
    assert not v.ok


@pytest.mark.parametrize("strips", [1, 2, 3, 7])
def test_partitioning_does_not_change_verdict(strips):
    args = (surface(4), DivisorClass(3, 2), [VG, VG], SearchWindow(6, 6, 3), BoundValue.rational(2))
    assert sweep(*args, strips=strips) == sweep(*args)


def test_process_pool_matches_sequential():
    args = (surface(2), L11, [VG], SearchWindow(10, 10, 8), FOUR_THIRDS)
    assert sweep(*args, strips=4, workers=2) == sweep(*args)


def test_window_monotonicity():
    args = (surface(2), L11, [VG])
    claimed = BoundValue.ratio(3, 2)
    small = sweep(*args, SearchWindow(5, 5, 4), claimed, use_xu=False)
    large = sweep(*args, SearchWindow(8, 9, 6), claimed, use_xu=False)
    assert classes(small.violations) <= classes(large.violations)
    assert small.violations


def test_ratio_cap_filters_reports():
    w = SearchWindow(8, 8, 6, ratio_cap=BoundValue.ratio(4, 3))
    v = sweep(surface(2), L11, [VG], w, FOUR_THIRDS)
    assert v.achievers == ()


def test_verdict_round_trip():
    v = sweep(surface(2), L11, [VG], SearchWindow(8, 8, 6), FOUR_THIRDS, use_xu=False)
    assert OracleVerdict.from_dict(v.to_dict()) == v


def test_window_validation():
    with pytest.raises(ValueError):
        SearchWindow(0, 3, 3)
    with pytest.raises(ValueError):
        sweep(surface(1), L11, [VG] * 4, SearchWindow(2, 2, 2), FOUR_THIRDS)
    assert SearchWindow.parse("8,8,6") == SearchWindow(8, 8, 6)


def test_replays():
    m4 = replay_contradiction("type2-m4")
    assert m4.inconsistent and any("is 12" in line for line in m4.lines)
    m5 = replay_contradiction("type2-m5")
    # 2*alpha*beta <= 18 < 22, i.e. alpha*beta <= 9 < 11
    assert m5.inconsistent and any("is 18" in line for line in m5.lines)
    m1 = replay_contradiction("type2-m1")
    assert m1.inconsistent
    assert any("(0,1): not effective" in line for line in m1.lines)
    assert any("(1,0): this fibre does not pass" in line for line in m1.lines)
    generic = replay_contradiction("type2-generic")
    assert generic.inconsistent and any("[4, 5]" in line for line in generic.lines)
    with pytest.raises(ValueError):
        replay_contradiction("type3-m2")


def test_multi_point_sweep_of_hr_bound():
    from bielliptic_seshadri.harbourne_roe import hr_lower_bound

    s = surface(2)
    cert = hr_lower_bound(s, L11, 2)
    v = verify_certificate(cert, s, L11, [VG, VG], SearchWindow(6, 6, 4))
    assert v.violations == ()


def test_candidate_hits_carry_placements():
    v = sweep(surface(3), L11, [ARB], SearchWindow(2, 2, 1), BoundValue.rational(1))
    hit = next(h for h in v.achievers if h.candidate == CurveCandidate(DivisorClass(1, 0), (1,)))
    assert hit.placements == ((PointSpec.singular(4),),)
