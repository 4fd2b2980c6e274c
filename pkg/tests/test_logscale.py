import cmath
import math

import mpmath as mp
import pytest
from hypothesis import given, strategies as st

from blochlab.logscale import NEG_INF, ONE, ZERO, LogComplex, log1mexp, logaddexp, lsum

finite = st.floats(-1e3, 1e3, allow_nan=False, allow_subnormal=False)
cplx = st.builds(complex, finite, finite)


def close(a: complex, b: complex, tol=1e-12):
    return abs(a - b) <= tol * max(1.0, abs(a), abs(b))


@given(cplx)
def test_round_trip(w):
    assert close(LogComplex.from_complex(w).to_complex(), w)


@given(cplx, cplx)
def test_arithmetic_matches_complex(u, v):
    lu, lv = LogComplex.from_complex(u), LogComplex.from_complex(v)
    assert close((lu * lv).to_complex(), u * v, 1e-12)
    assert abs((lu + lv).to_complex() - (u + v)) <= 1e-12 * max(1.0, abs(u), abs(v))
    if v != 0:
        assert close((lu / lv).to_complex(), u / v, 1e-12)


def test_zero_and_one():
    assert ZERO.is_zero and (ZERO * ONE).is_zero
    assert (ZERO + ONE) == ONE
    with pytest.raises(ZeroDivisionError):
        ZERO.reciprocal()


def test_no_overflow_beyond_double_range():
    big = LogComplex.polar(2000.0, 0.3)
    tiny = LogComplex.polar(-2000.0, -0.3)
    prod = big * tiny
    assert abs(prod.log_abs) < 1e-12
    assert close(prod.phase, 1 + 0j)
    assert big.to_complex().real == math.inf
    assert (big ** 3).log_abs == pytest.approx(6000.0)


def test_from_complex_handles_inf_components():
    w = complex(1e308, 1e308) * 10
    lc = LogComplex.from_complex(complex(1e308, 1e308))
    assert lc.log_abs == pytest.approx(math.log(1e308) + 0.5 * math.log(2.0))
    assert math.isinf(abs(w))


def test_sum_cancellation_to_zero():
    a = LogComplex.from_complex(2.5 - 1j)
    assert (a - a).is_zero


def test_lsum_order_is_left_to_right():
    terms = [LogComplex.from_complex(x) for x in (1e16, 1.0, -1e16)]
    assert lsum(terms).to_complex() == (1e16 + 1.0) - 1e16


@given(st.floats(-800, 0, allow_nan=False))
def test_log1mexp(x):
    if x == 0:
        assert log1mexp(x) == NEG_INF
        return
    mp.mp.dps = 50
    xm = mp.mpf(x)
    expect = float(mp.log1p(-mp.exp(xm)) if x < -1 else mp.log(-mp.expm1(xm)))
    assert log1mexp(x) == pytest.approx(expect, rel=1e-14, abs=1e-300)


def test_log1mexp_at_zero():
    assert log1mexp(0.0) == NEG_INF


@given(finite, finite)
def test_logaddexp(x, y):
    mp.mp.dps = 50
    expect = float(mp.log(mp.exp(mp.mpf(x)) + mp.exp(mp.mpf(y))))
    assert logaddexp(x, y) == pytest.approx(expect, rel=1e-14, abs=1e-15)
    assert logaddexp(NEG_INF, y) == y


@given(cplx)
def test_arg_matches_cmath(w):
    if w != 0:
        assert abs(cmath.exp(1j * LogComplex.from_complex(w).arg()) - w / abs(w)) < 1e-14
