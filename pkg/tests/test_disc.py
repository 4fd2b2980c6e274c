import math
import random

import mpmath as mp
import numpy as np
import pytest
from hypothesis import assume, given, strategies as st

from blochlab.disc import (
    G_SAFE, CircleGrid, DiscPoint, Horocycle, cayley_real_part, difference, horocycle_point,
    log_one_minus_rho2, log_pseudo_hyperbolic, mobius_deriv, mobius_eval, mobius_log,
    normalize_angle, one_minus, one_minus_conj_mul, pseudo_hyperbolic,
)
from blochlab.errors import DomainError

from oracles import mobius_mp, random_disc_point

radius = st.floats(0.0, 0.999, allow_nan=False)
angle = st.floats(-10.0, 10.0, allow_nan=False)
points = st.builds(lambda r, t: DiscPoint.from_radius(r, t), radius, angle)
gaps = st.floats(0.0, 200.0, allow_nan=False)


@given(angle)
def test_normalize_angle_range(th):
    v = normalize_angle(th)
    assert -math.pi < v <= math.pi
    assert math.isclose(math.cos(v), math.cos(th), abs_tol=1e-12)


def test_minus_pi_maps_to_pi():
    assert normalize_angle(-math.pi) == math.pi
    assert DiscPoint.from_gap(1.0, -math.pi).theta == math.pi


@given(points)
def test_cartesian_and_gap_agree(p):
    q = DiscPoint.from_complex(p.z)
    assert q.gap_log == pytest.approx(p.gap_log, rel=1e-12, abs=1e-15)
    assert abs(q.z - p.z) < 1e-15


@given(gaps, angle)
def test_json_round_trip(g, th):
    p = DiscPoint.from_gap(g, th)
    assert DiscPoint.from_json(p.to_json()) == p


def test_rejects_points_outside():
    for bad in (1.0, 1.5j, complex(0.8, 0.7)):
        with pytest.raises(DomainError):
            DiscPoint.from_complex(bad)
    with pytest.raises(DomainError):
        DiscPoint.from_gap(-1.0)
    with pytest.raises(DomainError):
        DiscPoint.from_gap(math.inf)


def test_log_abs_extremes():
    assert DiscPoint.from_gap(0.0).log_abs == -math.inf
    assert DiscPoint.from_gap(100.0).log_abs == pytest.approx(-math.exp(-100.0), rel=1e-12)


def test_mobius_examples():
    assert mobius_eval(0.5, 0.3) == pytest.approx(0.2 / 0.85, rel=1e-15)
    assert mobius_eval(0.5, 0.5) == 0
    assert pseudo_hyperbolic(0.5, -0.5) == pytest.approx(0.8, abs=1e-15)
    assert pseudo_hyperbolic(0, 0.3j) == pytest.approx(0.3, abs=1e-16)
    assert mobius_deriv(0.5, 0.5) == pytest.approx(-4.0 / 3.0, rel=1e-15)


@given(points, points)
def test_mobius_against_mpmath(a, z):
    mp.mp.dps = 40
    ref = complex(mobius_mp(a.z, z.z))
    got = mobius_eval(a, z)
    assert abs(got - ref) <= 1e-12 * max(1.0, abs(ref))


@given(points, points)
def test_pseudo_hyperbolic_symmetric_and_bounded(a, z):
    assert pseudo_hyperbolic(a, z) == pseudo_hyperbolic(z, a)
    assert 0.0 <= pseudo_hyperbolic(a, z) <= 1.0


@given(points)
def test_involution(a):
    rng = random.Random(3)
    z = DiscPoint.coerce(random_disc_point(rng, 0.9))
    w = DiscPoint.coerce(mobius_eval(a, z))
    assume(abs(w.z) < 1 - 1e-6)
    assert abs(mobius_eval(a, w) - z.z) < 1e-9


@given(points, points, points)
def test_mobius_invariance(a, z, w):
    fz, fw = mobius_eval(a, z), mobius_eval(a, w)
    assume(abs(fz) < 1 - 1e-6 and abs(fw) < 1 - 1e-6)
    assert pseudo_hyperbolic(fz, fw) == pytest.approx(pseudo_hyperbolic(z, w), abs=1e-8)


def test_schwarz_pick_at_gap_regime_mpmath():
    mp.mp.dps = 80
    for ga, gz, dth in [(30.0, 45.0, 1e-14), (60.0, 61.0, 0.0), (25.0, 80.0, 3e-12)]:
        a, z = DiscPoint.from_gap(ga, 0.0), DiscPoint.from_gap(gz, dth)
        am = 1 - mp.exp(-mp.mpf(ga))
        zm = (1 - mp.exp(-mp.mpf(gz))) * mp.expjpi(mp.mpf(dth) / mp.pi)
        ref = 1 - abs((am - zm) / (1 - am * zm)) ** 2
        assert float(mp.exp(log_one_minus_rho2(a, z)) / ref) == pytest.approx(1.0, abs=1e-9)


def test_one_minus_conj_mul_gap_route_matches_mpmath():
    mp.mp.dps = 80
    a, z = DiscPoint.from_gap(40.0, 0.3), DiscPoint.from_gap(35.0, 0.3 + 1e-13)
    am = (1 - mp.exp(-mp.mpf(40))) * mp.exp(1j * mp.mpf(a.theta))
    zm = (1 - mp.exp(-mp.mpf(35))) * mp.exp(1j * mp.mpf(z.theta))
    ref = 1 - mp.conj(am) * zm
    got = one_minus_conj_mul(a, z)
    assert got.log_abs == pytest.approx(float(mp.log(abs(ref))), rel=1e-12)


def test_routes_agree_in_safe_region():
    rng = random.Random(5)
    for _ in range(200):
        a = DiscPoint.coerce(random_disc_point(rng, 0.99))
        z = DiscPoint.coerce(random_disc_point(rng, 0.99))
        c = mobius_log(a, z, route="cartesian").to_complex()
        g = mobius_log(a, z, route="gap").to_complex()
        assert abs(c - g) < 1e-12


def test_same_ray_difference_exact():
    a, z = DiscPoint.from_gap(50.0), DiscPoint.from_gap(52.0)
    d = difference(a, z)
    assert d.log_abs == pytest.approx(math.log(math.exp(-50.0) - math.exp(-52.0)), rel=1e-14)
    assert difference(a, a).is_zero


def test_one_minus_in_gap_regime():
    z = DiscPoint.from_gap(G_SAFE + 20.0, 0.0)
    assert one_minus(z).log_abs == pytest.approx(-z.gap_log, rel=1e-15)


def test_horocycle_points():
    h = Horocycle(0.5)
    assert h.level == 1.0
    for d in (1e-1, 1e-3, 1e-6):
        z = horocycle_point(h, h.psi_for_distance(d))
        assert math.exp(one_minus(z).log_abs) == pytest.approx(d, rel=1e-9)
        assert cayley_real_part(z) == pytest.approx(1.0, rel=1e-9)
    with pytest.raises(DomainError):
        Horocycle(1.2)
    with pytest.raises(DomainError):
        h.psi_for_distance(2.0)


def test_circle_grid_nodes():
    g = CircleGrid.uniform(1.0, 16)
    assert g.thetas[-1] == math.pi and 0.0 in g.thetas
    assert np.all(np.diff(g.thetas) > 0)
    assert np.allclose(np.abs(g.points()), g.r)
    assert np.allclose(g.one_minus_z(), 1 - g.points())
    with pytest.raises(DomainError):
        CircleGrid(1.0, np.array([0.5, 0.1]))


def test_log_pseudo_hyperbolic_gap_points():
    a, b = DiscPoint.from_gap(30.0), DiscPoint.from_gap(31.0)
    ref = (math.exp(-30) - math.exp(-31)) / (math.exp(-30) + math.exp(-31) - math.exp(-61))
    assert log_pseudo_hyperbolic(a, b) == pytest.approx(math.log(ref), rel=1e-12)
