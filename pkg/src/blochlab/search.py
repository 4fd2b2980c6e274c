"""Maximization helpers: golden-section on an interval, global search on a circle."""
from __future__ import annotations

import math
from typing import Callable

import numpy as np

INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0
GOLDEN_TOL = 1e-12


def _better(v1, x1, v2, x2) -> bool:
    # larger value wins; exact ties go to the smaller |x|
    if v1 != v2:
        return v1 > v2
    return abs(x1) < abs(x2)


def golden_max(fun: Callable[[float], float], lo: float, hi: float,
               tol: float = GOLDEN_TOL, max_iter: int = 200) -> tuple[float, float]:
    """Maximize a unimodal ``fun`` on ``[lo, hi]``.

    Returns the best point actually evaluated, so the reported value is always
    reproducible from the returned abscissa.  ``tol`` is absolute in ``x``.
    """
    if hi < lo:
        lo, hi = hi, lo
    a, b = lo, hi
    c = b - INV_PHI * (b - a)
    d = a + INV_PHI * (b - a)
    fc, fd = fun(c), fun(d)
    best_x, best_v = (c, fc) if _better(fc, c, fd, d) else (d, fd)
    for _ in range(max_iter):
        if b - a <= tol:
            break
        if fc >= fd:
            b, d, fd = d, c, fc
            c = b - INV_PHI * (b - a)
            fc = fun(c)
            if _better(fc, c, best_v, best_x):
                best_x, best_v = c, fc
        else:
            a, c, fc = c, d, fd
            d = a + INV_PHI * (b - a)
            fd = fun(d)
            if _better(fd, d, best_v, best_x):
                best_x, best_v = d, fd
    return best_x, best_v


def local_maxima(values: np.ndarray, k: int) -> list[int]:
    """Indices of the ``k`` largest circular local maxima (ties: grid order)."""
    v = np.where(np.isnan(values), -np.inf, values)
    left = np.roll(v, 1)
    right = np.roll(v, -1)
    idx = np.nonzero((v >= left) & (v >= right) & np.isfinite(v))[0]
    if idx.size == 0:
        return []
    order = np.argsort(-v[idx], kind="stable")
    return [int(i) for i in idx[order[:k]]]


def circle_argmax(grid_values: np.ndarray, thetas: np.ndarray,
                  point_fun: Callable[[float], float], n_brackets: int = 3,
                  tol: float = GOLDEN_TOL, extra: tuple[float, ...] = (0.0,)) -> tuple[float, float]:
    """Global max of ``point_fun`` over angles, seeded by a coarse grid scan.

    ``grid_values`` are cheap (vectorized) estimates at ``thetas``; the best
    brackets are re-evaluated and refined with ``point_fun`` (the precise
    channel), and the maximum over everything evaluated is returned.
    """
    n = thetas.size
    best_t, best_v = None, -math.inf
    cands: list[float] = list(extra)
    seeds = local_maxima(grid_values, n_brackets)
    for j in seeds:
        cands.append(float(thetas[j]))
    for th in cands:
        v = point_fun(th)
        if best_t is None or _better(v, th, best_v, best_t):
            best_t, best_v = th, v
    step = 2.0 * math.pi / n
    for j in seeds:
        th0 = float(thetas[j])
        x, v = golden_max(point_fun, th0 - step, th0 + step, tol)
        if _better(v, x, best_v, best_t):
            best_t, best_v = x, v
    if best_t is None:
        return 0.0, -math.inf
    return best_t, best_v
