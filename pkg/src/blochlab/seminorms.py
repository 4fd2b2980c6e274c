"""Integral means, sup means, and lower-bound estimators for the Bloch,
logarithmic Bloch, and normal quantities.

Every estimator here returns a value attained at an explicit witness point,
so values are lower bounds for the corresponding suprema.
"""
from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, NamedTuple, Sequence

import numpy as np

from .disc import LOG2, CircleGrid, DiscPoint, normalize_angle
from .errors import ConvergenceError, DomainError
from .logscale import NEG_INF, logaddexp
from .search import GOLDEN_TOL, circle_argmax, golden_max
from .zoo import FunctionExpr, log_modulus, log_modulus_grid

N_SCAN = 4096
LOG_SAFE = 700.0
KINDS = ("bloch", "blog", "normal")


def _gap_of(r: float | None, gap_log: float | None) -> float:
    if gap_log is not None:
        if not (gap_log >= 0.0 and math.isfinite(gap_log)):
            raise DomainError(f"gap_log must be finite and >= 0, got {gap_log!r}")
        return float(gap_log)
    if r is None or not 0.0 <= r < 1.0:
        raise DomainError(f"radius must lie in [0, 1), got {r!r}")
    return -math.log1p(-r)


def _exp_or_flag(log_value: float) -> tuple[float, bool]:
    if log_value == NEG_INF:
        return 0.0, False
    if abs(log_value) > LOG_SAFE:
        return (math.inf if log_value > 0 else 0.0), True
    return math.exp(log_value), False


# ---------------------------------------------------------------------------
# means

def _log_mean_power(lm: np.ndarray, p: float) -> float:
    finite = lm[np.isfinite(lm)]
    if finite.size == 0:
        return NEG_INF
    x = p * finite
    m = x.max()
    return (m + math.log(np.exp(x - m).sum()) - math.log(lm.size)) / p


def integral_mean(f: FunctionExpr, r: float | None = None, p: float = 2.0, *,
                  gap_log: float | None = None, rtol: float = 1e-10,
                  max_nodes: int = 1 << 20, start_nodes: int = 16) -> float:
    """``M_p(r, f)`` by the periodic trapezoid rule with node doubling.

    ``p = inf`` delegates to :func:`sup_mean`.  Raises
    :class:`ConvergenceError` if the relative change is still above ``rtol``
    at ``max_nodes``.
    """
    if math.isinf(p):
        return sup_mean(f, r, gap_log=gap_log).value
    if p < 1.0:
        raise DomainError("integral means are provided for p >= 1 only")
    g = _gap_of(r, gap_log)
    if g == 0.0:
        return math.exp(log_modulus(f, DiscPoint.from_gap(0.0)))
    n = start_nodes
    prev = None
    while True:
        lm = log_modulus_grid(f, CircleGrid.uniform(g, n))
        cur = _exp_or_flag(_log_mean_power(lm, p))[0]
        if prev is not None and abs(cur - prev) <= rtol * abs(cur):
            return cur
        if n >= max_nodes:
            raise ConvergenceError(f"M_{p}(r) did not converge with {n} nodes", cur, prev)
        prev = cur
        n *= 2


@dataclass(frozen=True)
class SupMean:
    value: float
    theta_star: float
    log_value: float
    log_scale: bool
    gap_log: float

    @property
    def witness(self) -> DiscPoint:
        return DiscPoint.from_gap(self.gap_log, self.theta_star)


def sup_mean(f: FunctionExpr, r: float | None = None, *, gap_log: float | None = None,
             n_scan: int = N_SCAN) -> SupMean:
    """``M_inf(r, f)`` as a coarse scan followed by golden-section refinement.

    Works in the log-modulus channel throughout; ``log_scale`` is set when
    the maximum lies outside the double range and ``value`` saturated.
    """
    g = _gap_of(r, gap_log)
    if g == 0.0:
        lv = log_modulus(f, DiscPoint.from_gap(0.0))
        v, flag = _exp_or_flag(lv)
        return SupMean(v, 0.0, lv, flag, 0.0)
    theta, lv = _circle_max(lambda th: log_modulus(f, DiscPoint.from_gap(g, th)),
                            lambda grid: log_modulus_grid(f, grid), g, n_scan)
    v, flag = _exp_or_flag(lv)
    return SupMean(v, theta, lv, flag, g)


def _circle_max(point_fun, grid_fun, gap: float, n_scan: int):
    grid = CircleGrid.uniform(gap, n_scan)
    gv = grid_fun(grid)
    th, v = circle_argmax(gv, grid.thetas, point_fun, tol=GOLDEN_TOL)
    th = normalize_angle(th)
    return th, point_fun(th)


# ---------------------------------------------------------------------------
# pointwise quantities (log forms are primary)

def log_bloch_quantity(f: FunctionExpr, z) -> float:
    z = DiscPoint.coerce(z)
    return z.log_one_minus_abs2 + log_modulus(f.deriv(), z)


def bloch_quantity(f: FunctionExpr, z) -> float:
    """``(1 - |z|^2) |f'(z)|``."""
    return _exp_or_flag(log_bloch_quantity(f, z))[0]


def _log_blog_weight(log1ma2):
    return math.log(LOG2 - log1ma2)


def log_blog_quantity(f: FunctionExpr, z) -> float:
    z = DiscPoint.coerce(z)
    return log_bloch_quantity(f, z) + _log_blog_weight(z.log_one_minus_abs2)


def blog_quantity(f: FunctionExpr, z) -> float:
    """``(1 - |z|^2) log(2/(1 - |z|^2)) |f'(z)|``."""
    return _exp_or_flag(log_blog_quantity(f, z))[0]


def log_normal_quantity(f: FunctionExpr, z) -> float:
    z = DiscPoint.coerce(z)
    lb = log_bloch_quantity(f, z)
    if lb == NEG_INF:
        return NEG_INF
    return lb - logaddexp(0.0, 2.0 * log_modulus(f, z))


def normal_quantity(f: FunctionExpr, z) -> float:
    """``(1 - |z|^2) |f'(z)| / (1 + |f(z)|^2)``."""
    return _exp_or_flag(log_normal_quantity(f, z))[0]


_POINT_LOGQ: dict[str, Callable] = {
    "bloch": log_bloch_quantity,
    "blog": log_blog_quantity,
    "normal": log_normal_quantity,
}


def _grid_logq(f: FunctionExpr, kind: str, grid: CircleGrid) -> np.ndarray:
    t = grid.t
    l1ma2 = -grid.gap_log + math.log(2.0 - t)
    out = l1ma2 + log_modulus_grid(f.deriv(), grid)
    if kind == "blog":
        out = out + _log_blog_weight(l1ma2)
    elif kind == "normal":
        out = out - np.logaddexp(0.0, 2.0 * log_modulus_grid(f, grid))
    return out


class EscapeSequence(NamedTuple):
    bloch: list
    normal: list


def escape_sequence(f: FunctionExpr, points: Sequence) -> EscapeSequence:
    """Bloch and normal quantities of ``f`` along a sequence of points."""
    pts = [DiscPoint.coerce(p) for p in points]
    return EscapeSequence([bloch_quantity(f, z) for z in pts],
                          [normal_quantity(f, z) for z in pts])


# ---------------------------------------------------------------------------
# estimators

@dataclass
class SeminormEstimate:
    kind: str
    value: float
    log_value: float
    witness: DiscPoint
    grid_spec: dict
    monotone_history: list
    trace: list = field(default_factory=list)

    @property
    def log_scale(self) -> bool:
        return abs(self.log_value) > LOG_SAFE and self.log_value != NEG_INF

    def to_json(self) -> dict:
        from .io import jsonable
        return jsonable({
            "schema": "v1",
            "kind": self.kind,
            "value": self.value,
            "log_value": self.log_value,
            "log_scale": self.log_scale,
            "witness": self.witness.to_json(),
            "grid_spec": self.grid_spec,
            "monotone_history": self.monotone_history,
        })


def _ladder_gaps(levels: int) -> list[float]:
    return [0.0] + [j * LOG2 for j in range(1, levels + 1)]


def seminorm_est(f: FunctionExpr, kind: str = "bloch", levels: int = 12, *,
                 n_scan: int = N_SCAN, jobs: int = 1, refine_rounds: int = 6) -> SeminormEstimate:
    """Lower-bound estimate of ``sup_z q(f, z)`` for ``q`` one of
    ``bloch``, ``blog``, ``normal``.

    Circles ``1 - r = 2^-j`` for ``j = 0..levels`` are scanned (``j = 0`` is
    the origin), then the best point is polished by alternating a golden
    search in the gap variable with a fresh scan of the circle through it.  The result never depends
    on ``jobs``: circles are independent and reduced in ladder order.
    """
    if kind not in _POINT_LOGQ:
        raise DomainError(f"unknown seminorm kind {kind!r}")
    if levels < 1:
        raise DomainError("levels must be >= 1")
    qf = _POINT_LOGQ[kind]
    gaps = _ladder_gaps(levels)
    gap_cap = gaps[-1]

    def point(g, th):
        return qf(f, DiscPoint.from_gap(g, th))

    def scan(g):
        if g == 0.0:
            return 0.0, point(0.0, 0.0)
        return _circle_max(lambda th: point(g, th), lambda grid: _grid_logq(f, kind, grid), g, n_scan)

    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as ex:
            results = list(ex.map(scan, gaps))
    else:
        results = [scan(g) for g in gaps]

    history, trace = [], []
    best = None
    for level, (g, (th, lv)) in enumerate(zip(gaps, results)):
        trace.append({"level": level, "r_gap_log": g, "theta": th, "log_value": lv})
        if best is None or lv > best[2]:
            best = (g, th, lv, level)
        history.append(_exp_or_flag(best[2])[0])

    g_best, th_best, lv_best, lev = best
    if lev == 0:
        # the origin carries no direction; borrow the one seen on the first circle
        th_best = results[1][0]
    if lv_best != NEG_INF:
        lo = gaps[max(lev - 1, 0)]
        hi = gaps[min(lev + 1, len(gaps) - 1)]
        for _ in range(refine_rounds):
            improved = False
            g_new, v = golden_max(lambda g: point(g, th_best), lo, min(hi, gap_cap))
            if v > lv_best:
                g_best, lv_best, improved = g_new, v, True
            if g_best > 0.0:
                # whole-circle rescan: a peak found from the origin may sit on another ray
                th_new, v = scan(g_best)
                if v > lv_best:
                    th_best, lv_best, improved = th_new, v, True
            if not improved:
                break
        history.append(_exp_or_flag(lv_best)[0])

    witness = DiscPoint.from_gap(g_best, th_best)
    lv_best = qf(f, witness)
    value = _exp_or_flag(lv_best)[0]
    return SeminormEstimate(
        kind=kind,
        value=value,
        log_value=lv_best,
        witness=witness,
        grid_spec={"levels": levels, "n_scan": n_scan, "golden_tol": GOLDEN_TOL,
                   "ladder": "1-r=2^-j", "refine_rounds": refine_rounds},
        monotone_history=history,
        trace=trace,
    )


def bloch_seminorm_est(f: FunctionExpr, levels: int = 12, **kw) -> SeminormEstimate:
    return seminorm_est(f, "bloch", levels, **kw)


def blog_seminorm_est(f: FunctionExpr, levels: int = 12, **kw) -> SeminormEstimate:
    return seminorm_est(f, "blog", levels, **kw)


def normal_seminorm_est(f: FunctionExpr, levels: int = 12, **kw) -> SeminormEstimate:
    return seminorm_est(f, "normal", levels, **kw)
