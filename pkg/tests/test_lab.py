import math

import pytest

from blochlab import zoo
from blochlab.disc import DiscPoint
from blochlab.errors import DomainError, ScheduleError
from blochlab.lab import (
    FAIL, INSUFFICIENT_DEPTH, INSUFFICIENT_LENGTH, PASS, NonBlochThresholds, SupProfile,
    build_counterexample, horocycle_psi, interpolation_derivative_identity, pick_atoms,
    schedule_log_margins, select_radii, separation_logs, stolz_contains, uniform_separation,
    verify_nonbloch, verify_theorem1, verify_theorem2,
)

# Frozen from a 250-digit mpmath rebuild of the same construction for f = log(1/(1-z)).
ORACLE_GAPS = [1.0, 2.4973323148907202, 4.9946646297814404, 9.98932925956288, 19.97865851912576,
               39.95731703825152, 79.91463407650305, 159.82926815300609]
ORACLE_ESCAPE = [0.91652694572017063, 1.09270024349138, 2.3454605455528355, 3.1493666418030527,
                 4.2829133859954886, 5.5899962499428926, 7.1692168717424842, 9.2116098919763065]
ORACLE_LOG_I = [0.51012, 2.30382, 5.10910, 10.44696, 20.78284, 41.10808, 81.41197, 161.67317]
ORACLE_II = [0.84937, 0.51543, 0.043239, 0.00026239]          # n = 2..5
ORACLE_III = [0.36643, 0.19338, 0.018841, 1.2977e-4]          # n = 1..4
ORACLE_GF = [1.75374, 0.59064, 0.62518, 1.50050, 2.04745, 2.42941, 2.69947, 2.89043]
ORACLE_L1 = 2.9695290118059412


@pytest.fixture(scope="module")
def rep():
    return build_counterexample(zoo.LogOneMinus(), 8, 1.0)


def test_schedule_matches_oracle(rep):
    for got, ref in zip(rep.schedule.gaps, ORACLE_GAPS):
        # bisection stops at relative 1e-12 and each step starts from the last
        assert got == pytest.approx(ref, rel=1e-11)


def test_margins_recomputed_by_hand():
    f = zoo.LogOneMinus()
    prof = SupProfile(f)
    s = select_radii(f, 2, 1.0, profile=prof)
    e1, e2 = s.entries
    # M_inf(r, log 1/(1-z)) = log(1/(1-r)) = gap, attained on the positive axis
    assert e1.log_phi == pytest.approx(math.log(1.0), abs=1e-15)
    assert e2.log_phi == pytest.approx(math.log(e2.gap_log), rel=1e-14)
    iii = e2.log_phi - e1.log_phi - math.log(2)
    ii = (-3 * math.log(2) - 2 * e1.gap_log) - (-2 * e2.gap_log + e2.log_phi)
    iv = (e2.gap_log - e1.gap_log) - math.log(2)
    m = schedule_log_margins(2, e1.gap_log, e1.log_phi, e2.gap_log, e2.log_phi)
    assert m == pytest.approx({"iii": iii, "ii": ii, "iv": iv}, abs=1e-14)
    # the greedy choice makes the first binding margin vanish
    assert min(m.values()) == pytest.approx(0.0, abs=1e-9)
    assert prof.fast_path


def test_atoms_on_the_maximising_ray(rep):
    for a, g in zip(rep.atoms, rep.schedule.gaps):
        assert a.theta == 0.0 and a.gap_log == g
    f = zoo.Rotate(math.pi, zoo.LogOneMinus())
    s = select_radii(f, 3, 1.0, profile=SupProfile(f))
    assert all(a.theta == math.pi for a in pick_atoms(f, s))


def test_escape_matches_oracle(rep):
    for got, ref in zip(rep.escape, ORACLE_ESCAPE):
        assert got == pytest.approx(ref, rel=1e-9)


def test_term_decomposition_matches_oracle(rep):
    assert [t["I"] for t in rep.terms] == pytest.approx(ORACLE_LOG_I, rel=2e-5)
    assert rep.ratios("II")[1:5] == pytest.approx(ORACLE_II, rel=1e-4)
    assert rep.ratios("III")[0:4] == pytest.approx(ORACLE_III, rel=1e-4)
    assert rep.terms[0]["ratio_II"] == 0.0 and rep.terms[-1]["ratio_III"] == 0.0


def test_boundedness_channel_matches_oracle(rep):
    assert rep.gf_prime_bound == pytest.approx(ORACLE_GF, rel=1e-4)
    assert 1.9995 < rep.bloch_estimate.value < 2.0


def test_weights(rep):
    assert rep.weight_l1 == pytest.approx(ORACLE_L1, rel=1e-12)
    lam1 = rep.weights[0]
    assert rep.weight_l1 <= (2 + math.sqrt(2)) * lam1
    assert rep.weights == pytest.approx([math.exp(-0.5 * e.log_phi) for e in rep.schedule.entries], rel=1e-15)


def test_verdict_checks_and_growth_shortfall(rep):
    v = verify_nonbloch(rep)
    assert v.status == FAIL and v.failures == ["b_escape_growth"]
    relaxed = verify_nonbloch(rep, NonBlochThresholds(growth_ratio=3.9))
    assert relaxed.status == PASS
    names = [c["name"] for c in relaxed.checks]
    assert len(names) == 5


def test_short_schedules():
    r = build_counterexample(zoo.LogOneMinus(), 2, 1.0, levels=6)
    assert verify_nonbloch(r).status == INSUFFICIENT_LENGTH
    assert r.escape[1] > r.escape[0]


def test_schedule_overflow_names_condition():
    with pytest.raises(ScheduleError) as exc:
        select_radii(zoo.LogOneMinus(), 21, 1.0)
    assert exc.value.n == 21 and exc.value.condition == "iii"
    assert "(iii)" in str(exc.value)


def test_theorem2_defaults():
    r = verify_theorem2()
    assert r.s_level == -1.0 and r.s_constancy < 1e-9
    names = {c["name"]: c["passed"] for c in r.verdict.checks}
    assert names["s_constant"] and names["radial_zero"]
    assert r.horocycle_trace[-1].log_mod_F == pytest.approx(math.log(5.1151877551691779), rel=1e-9)
    assert [s.normal_q for s in r.horocycle_trace] == pytest.approx(
        [1.00838, 0.85212, 0.66896, 0.53646, 0.44360, 0.37660], rel=1e-4)
    assert r.radial_trace[2].log_mod_F == pytest.approx(-1997.0673552660839, rel=1e-13)


def test_theorem2_levels_and_depth():
    assert verify_theorem2(a=0.9).s_level == pytest.approx(-9.0, rel=1e-15)
    assert verify_theorem2(depth=1).verdict.status == INSUFFICIENT_DEPTH
    with pytest.raises(DomainError):
        verify_theorem2(a=1.0)
    with pytest.raises(DomainError):
        horocycle_psi(0.5, 2.0)


def test_theorem1_wraps_both_parts():
    r = verify_theorem1(depth=3)
    assert 1.99 < r.bloch_estimate.value < 2.0
    assert r.theorem2.depth == 3


def test_separation_helpers():
    assert separation_logs([0.5, 0.5])[0] == -math.inf
    assert uniform_separation([0.3j]) == 1.0
    assert interpolation_derivative_identity([0.3j]) < 1e-15
    far = [DiscPoint.from_gap(25.0, 0.0), DiscPoint.from_gap(25.0, 1.0)]
    assert interpolation_derivative_identity(far) < 1e-9
    with pytest.raises(DomainError):
        uniform_separation([])


def test_stolz():
    assert stolz_contains(1.0, [0.5, 0.9]) == [True, True]
    assert stolz_contains(2.0, [0.5j]) == [False]
    assert stolz_contains(50.0, [DiscPoint.from_gap(20.0, 1e-10)]) == [True]
    with pytest.raises(DomainError):
        stolz_contains(0.5, [0.1])


def test_escape_step_ratio_band(rep):
    e = rep.escape
    steps = [b / a for a, b in zip(e[3:], e[4:])]
    assert all(1.2 <= s <= 1.6 for s in steps), steps
    assert all(r < 1.0 for r in rep.ratios("II")[2:]) and all(r < 1.0 for r in rep.ratios("III")[2:])
