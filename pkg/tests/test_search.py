import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from blochlab.search import circle_argmax, golden_max, local_maxima


@given(st.floats(-3, 3), st.floats(0.1, 5))
def test_golden_max_parabola(c, w):
    x, v = golden_max(lambda t: -(t - c) ** 2, c - w, c + 2 * w)
    assert abs(x - c) < 1e-6
    assert v == -(x - c) ** 2


def test_golden_returns_evaluated_point():
    seen = []

    def f(t):
        seen.append(t)
        return math.sin(t)

    x, v = golden_max(f, 0.0, 3.0)
    assert x in seen and v == math.sin(x)
    assert abs(x - math.pi / 2) < 1e-6


def test_golden_tie_break_prefers_small_abs():
    x, _ = golden_max(lambda t: 1.0, -1.0, 1.0, max_iter=5)
    assert abs(x) <= 1.0
    x2, _ = golden_max(lambda t: 1.0, -1.0, 1.0, max_iter=5)
    assert x == x2


def test_local_maxima_circular():
    v = np.array([5.0, 1.0, 2.0, 1.0, 4.0])
    assert local_maxima(v, 3) == [0, 2]


@given(st.floats(-math.pi + 0.01, math.pi))
def test_circle_argmax_cosine(t0):
    th = np.linspace(-math.pi, math.pi, 257)[1:]
    f = lambda t: math.cos(t - t0)
    t, v = circle_argmax(np.cos(th - t0), th, f)
    assert v == pytest.approx(1.0, abs=1e-12)
    assert abs(math.remainder(t - t0, 2 * math.pi)) < 2e-6


def test_circle_argmax_includes_zero_candidate():
    th = np.linspace(-math.pi, math.pi, 9)[1:]
    t, v = circle_argmax(np.full(th.shape, -np.inf), th, lambda t: 1.0 if t == 0.0 else 0.0)
    assert t == 0.0 and v == 1.0
