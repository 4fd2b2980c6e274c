"""Finite certificates for the two constructions of the lab.

* Theorem 2 style: ``F = S f`` with ``S`` an atomic singular inner function
  and ``f`` tending to infinity at 1.  ``|S|`` is constant on each horocycle at
  1, so ``F`` has asymptotic value infinity there while its radial limit is 0,
  which rules out normality.
* Theorem 4 style: for an unbounded Bloch ``f`` a function ``g`` in the
  minimal Besov space is assembled from Möbius atoms placed where ``|f|``
  peaks, and ``(1-|a_n|)|(g f)'(a_n)|`` is shown to grow.

Also here: separation and interpolation predicates for finite zero sets, and
the Stolz angle test.  All boundary-near quantities are handled as logs.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import kernels
from .disc import (
    DiscPoint, Horocycle, horocycle_point, log_pseudo_hyperbolic, one_minus, one_minus_conj_mul,
)
from .errors import DomainError, ScheduleError
from .io import SCHEMA_VERSION, jsonable
from .logscale import NEG_INF
from .seminorms import (
    N_SCAN, SeminormEstimate, _exp_or_flag, bloch_seminorm_est,
    log_bloch_quantity, log_normal_quantity, sup_mean,
)
from .zoo import AtomicInner, BesovAtomSum, FunctionExpr, LogOneMinus, Product, besov_assemble, log_modulus

GAP_LIMIT = 1e6
BISECT_ITERS = 64
BISECT_RTOL = 1e-12
SNAP_TOL = 1e-9
RAY_CHECK_GAP = 3.0
CONDITIONS = ("iii", "ii", "iv")


def _flagged(log_value: float) -> dict:
    v, flag = _exp_or_flag(log_value)
    return {"value": v, "log": log_value, "log_scale": flag}


# ---------------------------------------------------------------------------
# phi(r) = M_inf(r, f)

def _snap(theta: float) -> float:
    # angles this close to the real axis are put on it, so the same-ray
    # formulas apply exactly
    if abs(theta) < SNAP_TOL:
        return 0.0
    if math.pi - abs(theta) < SNAP_TOL:
        return math.pi
    return theta


class SupProfile:
    """``log M_inf(r, f)`` as a function of ``gap_log``, with the maximizing angle.

    If ``f`` advertises a ray of maximal modulus, that ray is cross-checked
    once against a dense scan at ``gap_log = 3`` and then used for every
    ``gap_log >= 3``; closer to the origin the full circle is always scanned.
    """

    def __init__(self, f: FunctionExpr, n_scan: int = N_SCAN):
        self.f = f
        self.n_scan = n_scan
        self.ray = None
        ray = f.ray_angle()
        if ray is not None:
            dense = sup_mean(f, gap_log=RAY_CHECK_GAP, n_scan=4 * n_scan)
            on_ray = log_modulus(f, DiscPoint.from_gap(RAY_CHECK_GAP, ray))
            if dense.log_value <= on_ray + 1e-12 * max(1.0, abs(on_ray)):
                self.ray = ray
        self._cache: dict[float, tuple[float, float]] = {}

    @property
    def fast_path(self) -> bool:
        return self.ray is not None

    def __call__(self, gap: float) -> tuple[float, float]:
        """``(log phi, theta_star)`` on the circle with the given gap."""
        hit = self._cache.get(gap)
        if hit is not None:
            return hit
        if self.ray is not None and gap >= RAY_CHECK_GAP:
            th = self.ray
            out = (log_modulus(self.f, DiscPoint.from_gap(gap, th)), th)
        else:
            sm = sup_mean(self.f, gap_log=gap, n_scan=self.n_scan)
            th = _snap(sm.theta_star)
            out = (log_modulus(self.f, DiscPoint.from_gap(gap, th)), th)
            ray = self.f.ray_angle()
            if ray is not None:
                # an advertised ray wins any tie with the scan, which only resolves angles to ~1e-8
                on_ray = log_modulus(self.f, DiscPoint.from_gap(gap, ray))
                if out[0] <= on_ray + 1e-12 * max(1.0, abs(on_ray)):
                    out = (on_ray, ray)
        self._cache[gap] = out
        return out


# ---------------------------------------------------------------------------
# radius schedule

@dataclass(frozen=True)
class ScheduleEntry:
    n: int
    gap_log: float
    log_phi: float
    theta_star: float
    log_m2: float | None = None
    log_m3: float | None = None
    log_m4: float | None = None

    @property
    def phi(self) -> float:
        return _exp_or_flag(self.log_phi)[0]

    def margins(self) -> dict:
        out = {}
        for name, lv in (("m2", self.log_m2), ("m3", self.log_m3), ("m4", self.log_m4)):
            out[name] = None if lv is None else _exp_or_flag(lv)[0]
            out["log_" + name] = lv
        return out

    def to_json(self) -> dict:
        v, flag = _exp_or_flag(self.log_phi)
        return {"n": self.n, "gap_log": self.gap_log, "phi": v, "log_phi": self.log_phi,
                "phi_log_scale": flag, "theta_star": self.theta_star, "margins": self.margins()}


@dataclass(frozen=True)
class RadiusSchedule:
    entries: tuple
    fast_path: bool = False

    def __len__(self):
        return len(self.entries)

    @property
    def gaps(self) -> list[float]:
        return [e.gap_log for e in self.entries]

    def to_json(self) -> dict:
        return {"entries": [e.to_json() for e in self.entries], "fast_path": self.fast_path}


def schedule_log_margins(n: int, g_prev: float, lphi_prev: float, g: float, lphi: float) -> dict:
    """Log margins of the three conditions on step ``n``; each holds iff >= 0.

    (iii) ``phi_n >= 2 phi_{n-1}``;
    (ii)  ``(1-r_n)^2 phi_n <= (1/n) ((1-r_{n-1})/n)^2``;
    (iv)  ``(1-r_n)/(1-r_{n-1}) <= 1/n``.
    """
    ln = math.log(n)
    return {
        "iii": lphi - lphi_prev - math.log(2.0),
        "ii": (-3.0 * ln - 2.0 * g_prev) - (-2.0 * g + lphi),
        "iv": (g - g_prev) - ln,
    }


def _overflow(n, margins, gap_limit):
    m = margins(gap_limit)
    bad = next((k for k in CONDITIONS if m[k] < 0.0), "iv")
    raise ScheduleError(f"step {n}: condition ({bad}) cannot be met with gap_log <= {gap_limit:g}", n, bad)


def select_radii(f: FunctionExpr, N: int, r1_gap_log: float = 1.0, *,
                 profile: SupProfile | None = None, gap_limit: float = GAP_LIMIT) -> RadiusSchedule:
    """Smallest radii, one step at a time, meeting conditions (ii)-(iv).

    Each step brackets by doubling from ``gap_{n-1} + log n`` (the least gap
    allowed by (iv)) and then bisects on ``gap_log``.  Bisection assumes the
    conditions, once met, stay met further out; ``phi`` grows and
    ``(1-r)^2 phi`` decays eventually, which is the situation of interest.
    """
    if N < 2:
        raise DomainError("N must be >= 2")
    if not (r1_gap_log > 0.0 and math.isfinite(r1_gap_log)):
        raise DomainError("r1_gap_log must be a positive finite number")
    prof = profile if profile is not None else SupProfile(f)
    lphi, th = prof(r1_gap_log)
    if lphi == NEG_INF:
        raise ScheduleError("f vanishes identically on the first circle", 1, "iii")
    entries = [ScheduleEntry(1, float(r1_gap_log), lphi, th)]

    for n in range(2, N + 1):
        prev = entries[-1]

        def margins(g):
            return schedule_log_margins(n, prev.gap_log, prev.log_phi, g, prof(g)[0])

        def ok(g):
            return all(v >= 0.0 for v in margins(g).values())

        lo = prev.gap_log + math.log(n)
        if ok(lo):
            hi = lo
        else:
            step = max(1.0, lo)
            hi = lo + step
            while not ok(hi):
                if hi > gap_limit:
                    _overflow(n, margins, gap_limit)
                lo = hi
                step *= 2.0
                hi = lo + step
            for _ in range(BISECT_ITERS):
                if hi - lo <= BISECT_RTOL * hi:
                    break
                mid = 0.5 * (lo + hi)
                if ok(mid):
                    hi = mid
                else:
                    lo = mid
        if hi > gap_limit:
            _overflow(n, margins, gap_limit)
        m = margins(hi)
        lphi, th = prof(hi)
        entries.append(ScheduleEntry(n, hi, lphi, th, m["ii"], m["iii"], m["iv"]))
    return RadiusSchedule(tuple(entries), prof.fast_path)


def pick_atoms(f: FunctionExpr, schedule: RadiusSchedule) -> list[DiscPoint]:
    """Points of modulus ``r_k`` at which ``|f|`` attains ``phi(r_k)``."""
    return [DiscPoint.from_gap(e.gap_log, e.theta_star) for e in schedule.entries]


# ---------------------------------------------------------------------------
# Theorem 4 report

@dataclass
class CounterexampleReport:
    f: FunctionExpr
    schedule: RadiusSchedule
    atoms: list
    g: BesovAtomSum
    log_escape: list
    log_proxy: list
    terms: list
    log_gf_prime_bound: list
    bloch_estimate: SeminormEstimate

    @property
    def weights(self) -> list[float]:
        return [w.real for w in self.g.weights]

    @property
    def weight_l1(self) -> float:
        return self.g.weight_l1

    @property
    def escape(self) -> list[float]:
        return [_exp_or_flag(v)[0] for v in self.log_escape]

    @property
    def gf_prime_bound(self) -> list[float]:
        return [_exp_or_flag(v)[0] for v in self.log_gf_prime_bound]

    def ratios(self, key: str) -> list[float]:
        return [t["ratio_" + key] for t in self.terms]

    def to_json(self, verdict=None) -> dict:
        out = {
            "schema": SCHEMA_VERSION,
            "kind": "theorem4",
            "f": self.f.to_json(),
            "schedule": self.schedule.to_json(),
            "atoms": [a.to_json() for a in self.atoms],
            "weights": self.weights,
            "weight_l1": self.weight_l1,
            "escape": [_flagged(v) for v in self.log_escape],
            "proxy": [_flagged(v) for v in self.log_proxy],
            "terms": [{k: (_flagged(v) if k in ("I", "II", "III") else v) for k, v in t.items()}
                      for t in self.terms],
            "gf_prime_bound": [_flagged(v) for v in self.log_gf_prime_bound],
            "bloch_estimate_f": self.bloch_estimate.to_json(),
        }
        if verdict is not None:
            out["verdict"] = verdict.to_json()
        return jsonable(out)


def decompose_terms(f: FunctionExpr, atoms: list, weights: list, n: int) -> dict:
    """``I``, ``II``, ``III`` at ``a_n`` (``n`` is 1-based), as logs.

    ``I = |f(a_n)| lambda_n |phi'_{a_n}(a_n)|`` with
    ``|phi'_a(a)| = 1/(1-|a|^2)``; ``II`` and ``III`` are
    ``|f(a_n)| sum lambda_k (1-|a_k|^2)/|1 - conj(a_k) a_n|^2`` over ``k < n``
    and ``k > n``.
    """
    a = atoms[n - 1]
    lf = log_modulus(f, a)

    def lw(k):
        w = abs(weights[k])
        return math.log(w) if w > 0 else NEG_INF

    log_I = lf + lw(n - 1) - a.log_one_minus_abs2

    def side(ks):
        logs = [lw(k) + atoms[k].log_one_minus_abs2 - 2.0 * one_minus_conj_mul(atoms[k], a).log_abs
                for k in ks]
        if not logs:
            return NEG_INF
        m = max(logs)
        if m == NEG_INF:
            return NEG_INF
        return lf + m + math.log(math.fsum(math.exp(x - m) for x in logs))

    log_II = side(range(0, n - 1))
    log_III = side(range(n, len(atoms)))

    def ratio(x):
        if x == NEG_INF:
            return 0.0
        return _exp_or_flag(x - log_I)[0]

    return {"n": n, "I": log_I, "II": log_II, "III": log_III,
            "ratio_II": ratio(log_II), "ratio_III": ratio(log_III)}


def assemble_report(f: FunctionExpr, schedule: RadiusSchedule, atoms: list, weights: list, *,
                    levels: int = 12, jobs: int = 1) -> CounterexampleReport:
    """Build ``g`` from the given atoms and weights and certify it against ``f``.

    Separate from :func:`build_counterexample` so that deliberately wrong
    weights can be pushed through the same certificate.
    """
    g = besov_assemble(0.0, [complex(w) for w in weights], atoms)
    gf_d = Product(g, f).deriv()
    g_d = g.deriv()
    f_d = f.deriv()
    log_escape, log_proxy, log_bound, terms = [], [], [], []
    for n, a in enumerate(atoms, start=1):
        lt = -a.gap_log
        log_escape.append(lt + log_modulus(gf_d, a))
        log_proxy.append(lt + log_modulus(g_d, a) + log_modulus(f, a))
        log_bound.append(lt + log_modulus(g, a) + log_modulus(f_d, a))
        terms.append(decompose_terms(f, atoms, list(g.weights), n))
    est = bloch_seminorm_est(f, levels, jobs=jobs)
    return CounterexampleReport(f, schedule, list(atoms), g, log_escape, log_proxy, terms, log_bound, est)


def build_counterexample(f: FunctionExpr, N: int, r1_gap_log: float = 1.0, *,
                         levels: int = 12, jobs: int = 1) -> CounterexampleReport:
    """Radii, atoms, weights ``lambda_k = phi(r_k)^{-1/2}`` and the full certificate."""
    schedule = select_radii(f, N, r1_gap_log)
    atoms = pick_atoms(f, schedule)
    weights = [math.exp(-0.5 * e.log_phi) for e in schedule.entries]
    return assemble_report(f, schedule, atoms, weights, levels=levels, jobs=jobs)


# ---------------------------------------------------------------------------
# verdicts

PASS, FAIL = "PASS", "FAIL"
INSUFFICIENT_LENGTH = "INSUFFICIENT_LENGTH"
INSUFFICIENT_DEPTH = "INSUFFICIENT_DEPTH"


@dataclass
class Verdict:
    status: str
    checks: list = field(default_factory=list)
    thresholds: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.status == PASS

    @property
    def failures(self) -> list[str]:
        return [c["name"] for c in self.checks if not c["passed"]]

    def to_json(self) -> dict:
        return jsonable({"status": self.status, "checks": self.checks, "thresholds": self.thresholds})


@dataclass(frozen=True)
class NonBlochThresholds:
    """Conventions of the certificate; none of them is sharp."""

    window_start: int | None = None  # default ceil(N/3)
    growth_ratio: float = 4.0
    dominance: float = 0.5
    bound_slack: float = 1.01
    weight_ratio: float = 2.0 ** -0.5 + 1e-12


def verify_nonbloch(report: CounterexampleReport, thresholds: NonBlochThresholds | None = None) -> Verdict:
    """Check that the escape data certify ``g f`` is not Bloch.

    (a) escape strictly increasing from ``n0 = ceil(N/3)``; (b) final escape
    at least ``growth_ratio`` times escape at ``n0``; (c) II/I and III/I
    below ``dominance`` at ``n = N``; (d) ``(1-|a_n|)|g(a_n) f'(a_n)|`` within
    ``weight_l1 * bloch estimate * bound_slack``; (e) weights positive with
    consecutive ratios at most ``weight_ratio``.
    """
    th = thresholds or NonBlochThresholds()
    N = len(report.atoms)
    n0 = th.window_start or math.ceil(N / 3)
    tdict = {"window_start": n0, "growth_ratio": th.growth_ratio, "dominance": th.dominance,
             "bound_slack": th.bound_slack, "weight_ratio": th.weight_ratio}
    if N < 4:
        return Verdict(INSUFFICIENT_LENGTH, [], tdict)
    le = report.log_escape
    window = le[n0 - 1:]
    checks = []
    inc = all(b > a for a, b in zip(window, window[1:]))
    checks.append({"name": "a_escape_increasing", "passed": inc, "value": None, "threshold": None})
    growth = _exp_or_flag(le[-1] - le[n0 - 1])[0]
    checks.append({"name": "b_escape_growth", "passed": growth >= th.growth_ratio,
                   "value": growth, "threshold": th.growth_ratio})
    last = report.terms[-1]
    dom = max(last["ratio_II"], last["ratio_III"])
    checks.append({"name": "c_dominance", "passed": dom < th.dominance, "value": dom,
                   "threshold": th.dominance})
    cap = report.weight_l1 * report.bloch_estimate.value * th.bound_slack
    worst = max(report.gf_prime_bound)
    checks.append({"name": "d_boundedness", "passed": worst <= cap, "value": worst, "threshold": cap})
    w = report.weights
    wr = max(b / a for a, b in zip(w, w[1:])) if all(x > 0 for x in w) else math.inf
    checks.append({"name": "e_weight_decay", "passed": all(x > 0 for x in w) and wr <= th.weight_ratio,
                   "value": wr, "threshold": th.weight_ratio})
    status = PASS if all(c["passed"] for c in checks) else FAIL
    return Verdict(status, checks, tdict)


# ---------------------------------------------------------------------------
# Theorem 2 traces

@dataclass(frozen=True)
class TraceSample:
    path: str
    j: int
    param: float
    log_mod_F: float
    log_mod_S: float
    log_mod_f: float
    bloch_q: float
    normal_q: float
    point: DiscPoint

    def to_json(self) -> dict:
        d = {k: getattr(self, k) for k in ("path", "j", "param", "log_mod_F", "log_mod_S",
                                           "log_mod_f", "bloch_q", "normal_q")}
        d["point"] = self.point.to_json()
        return d


def _sample(path, j, param, F, S, f, z) -> TraceSample:
    ls = log_modulus(S, z)
    lf = log_modulus(f, z)
    return TraceSample(path, j, param, log_modulus(F, z), ls, lf,
                       _exp_or_flag(log_bloch_quantity(F, z))[0],
                       _exp_or_flag(log_normal_quantity(F, z))[0], z)


@dataclass
class Theorem2Report:
    c: float
    a: float
    depth: int
    f: FunctionExpr
    horocycle_trace: list
    radial_trace: list
    s_level: float
    s_constancy: float
    normal_sup: float
    normal_sup_at: dict | None
    normal_at_origin: float
    verdict: Verdict

    def trace_rows(self) -> list[dict]:
        rows = []
        for s in self.horocycle_trace + self.radial_trace:
            for series in ("log_mod_F", "log_mod_S", "log_mod_f", "bloch_q", "normal_q"):
                v = getattr(s, series)
                rows.append({"path": s.path, "level": s.j, "r_gap_log": s.point.gap_log,
                             "theta": s.point.theta, "series": series, "quantity": v,
                             "log_scale_flag": int(series.startswith("log_"))})
        return rows

    def to_json(self) -> dict:
        return jsonable({
            "schema": SCHEMA_VERSION,
            "kind": "theorem2",
            "c": self.c, "a": self.a, "depth": self.depth, "f": self.f.to_json(),
            "s_level": self.s_level,
            "s_constancy": self.s_constancy,
            "horocycle_trace": [s.to_json() for s in self.horocycle_trace],
            "radial_trace": [s.to_json() for s in self.radial_trace],
            "normal_sup": self.normal_sup,
            "normal_sup_at": self.normal_sup_at,
            "normal_at_origin": self.normal_at_origin,
            "verdict": self.verdict.to_json(),
        })


def horocycle_psi(a: float, distance: float) -> float:
    """Parameter ``psi`` with ``|1 - z(psi)| = distance`` on the horocycle ``Gamma_a``."""
    s = distance / (2.0 * (1.0 - a))
    if not 0.0 < s <= 1.0:
        raise DomainError(f"distance {distance!r} is not attained on the horocycle of level a={a!r}")
    return 2.0 * math.asin(s)


def verify_theorem2(f: FunctionExpr | None = None, c: float = 1.0, a: float = 0.5, depth: int = 6, *,
                    s_tol: float = 1e-9, j0: int = 2, radial_rtol: float = 1e-2) -> Theorem2Report:
    """Traces of ``F = S_c f`` along the horocycle ``Gamma_a`` and along ``[0, 1)``.

    Horocycle samples sit at ``|1 - z| = 10^-j`` and radial samples at
    ``1 - r = 10^-j`` for ``j = 1..depth``.  PASS needs ``log|S|`` constant
    on the horocycle (to ``s_tol``), ``log|F|`` strictly increasing there from
    ``j = j0``, and along the radius ``log|F|`` strictly decreasing with the
    deepest value within ``radial_rtol`` of ``-c (1+r)/(1-r)``.
    """
    f = f if f is not None else LogOneMinus()
    if not c > 0.0:
        raise DomainError("c must be positive")
    if not 0.0 < a < 1.0:
        raise DomainError("a must lie in (0, 1)")
    if depth < 1:
        raise DomainError("depth must be >= 1")
    S = AtomicInner(c)
    F = Product(S, f)
    hc = Horocycle(a)
    horo, radial = [], []
    for j in range(1, depth + 1):
        d = 10.0 ** -j
        psi = horocycle_psi(a, d)
        horo.append(_sample("horocycle", j, psi, F, S, f, horocycle_point(hc, psi)))
        g = j * math.log(10.0)
        radial.append(_sample("radial", j, g, F, S, f, DiscPoint.from_gap(g, 0.0)))

    s_level = -c * a / (1.0 - a)
    s_dev = max(abs(s.log_mod_S - s_level) for s in horo)
    samples = horo + radial
    top = max(samples, key=lambda s: s.normal_q)
    origin = _exp_or_flag(log_normal_quantity(F, DiscPoint.from_gap(0.0)))[0]
    thresholds = {"s_tol": s_tol, "j0": j0, "radial_rtol": radial_rtol, "unbounded_factor": 10.0}

    if depth < 2:
        verdict = Verdict(INSUFFICIENT_DEPTH, [], thresholds)
    else:
        checks = [{"name": "s_constant", "passed": s_dev < s_tol, "value": s_dev, "threshold": s_tol}]
        hv = [s.log_mod_F for s in horo[j0 - 1:]]
        checks.append({"name": "asymptotic_infinity", "passed": all(y > x for x, y in zip(hv, hv[1:])),
                       "value": hv[-1] if hv else None, "threshold": None})
        rv = [s.log_mod_F for s in radial]
        deep = radial[-1]
        t = deep.point.t
        expected = -c * (2.0 - t) / t
        rel = abs(deep.log_mod_F / expected - 1.0)
        checks.append({"name": "radial_zero",
                       "passed": all(y < x for x, y in zip(rv, rv[1:])) and rel < radial_rtol,
                       "value": rel, "threshold": radial_rtol})
        verdict = Verdict(PASS if all(ch["passed"] for ch in checks) else FAIL, checks, thresholds)
        verdict.checks.append({"name": "normal_unbounded_proxy", "passed": top.normal_q > 10.0 * origin,
                               "value": top.normal_q, "threshold": 10.0 * origin, "informational": True})

    return Theorem2Report(c, a, depth, f, horo, radial, s_level, s_dev, top.normal_q,
                          {"path": top.path, "j": top.j}, origin, verdict)


@dataclass
class Theorem1Report:
    bloch_estimate: SeminormEstimate
    theorem2: Theorem2Report

    def to_json(self) -> dict:
        return jsonable({"schema": SCHEMA_VERSION, "kind": "theorem1",
                         "bloch_estimate_f": self.bloch_estimate.to_json(),
                         "theorem2": self.theorem2.to_json()})


def verify_theorem1(f: FunctionExpr | None = None, a: float = 0.5, depth: int = 6, *,
                    levels: int = 12, jobs: int = 1) -> Theorem1Report:
    """A Bloch ``f`` tending to infinity at 1 times ``S_1`` is not normal."""
    f = f if f is not None else LogOneMinus()
    return Theorem1Report(bloch_seminorm_est(f, levels, jobs=jobs), verify_theorem2(f, 1.0, a, depth))


# ---------------------------------------------------------------------------
# separation, interpolation, Stolz angles

def separation_logs(zeros) -> list[float]:
    """``sum_{m != n} log rho(a_n, a_m)`` for each ``n``."""
    pts = [DiscPoint.coerce(z) for z in zeros]
    if all(not p.in_gap_regime for p in pts):
        arr = np.array([p.z for p in pts], dtype=np.complex128)
        return [float(x) for x in kernels.separation_logs(arr)]
    out = []
    for i, p in enumerate(pts):
        acc = 0.0
        for j, q in enumerate(pts):
            if i != j:
                acc += log_pseudo_hyperbolic(p, q)
        out.append(acc)
    return out


def uniform_separation(zeros) -> float:
    """``delta = min_n prod_{m != n} rho(a_n, a_m)``."""
    if not zeros:
        raise DomainError("need at least one point")
    return math.exp(min(separation_logs(zeros)))


def interpolation_derivative_identity(zeros) -> float:
    """Max relative gap between ``(1-|a_n|^2)|B'(a_n)|`` and ``prod_{m != n} rho(a_n, a_m)``."""
    from .zoo import BlaschkeFinite

    pts = [DiscPoint.coerce(z) for z in zeros]
    if not pts:
        raise DomainError("need at least one zero")
    B = BlaschkeFinite(tuple(pts))
    dB = B.deriv()
    rhs = separation_logs(pts)
    worst = 0.0
    for p, r in zip(pts, rhs):
        lhs = p.log_one_minus_abs2 + log_modulus(dB, p)
        if lhs == NEG_INF and r == NEG_INF:
            continue
        if lhs == NEG_INF or r == NEG_INF:
            return 1.0
        worst = max(worst, abs(math.expm1(lhs - r)))
    return worst


def stolz_contains(sigma: float, points) -> list[bool]:
    """``|1 - z| <= sigma (1 - |z|)`` for each point, checked on logs.

    A relative slack of a few ulps keeps boundary cases such as real points
    with ``sigma = 1`` on the inside.
    """
    if not sigma >= 1.0:
        raise DomainError("sigma must be >= 1")
    out = []
    ls = math.log(sigma)
    for z in points:
        z = DiscPoint.coerce(z)
        lhs = one_minus(z).log_abs
        rhs = ls - z.gap_log
        out.append(bool(lhs <= rhs + 8.0 * np.finfo(float).eps * max(1.0, abs(rhs))))
    return out


__all__ = [
    "SupProfile", "ScheduleEntry", "RadiusSchedule", "schedule_log_margins", "select_radii",
    "pick_atoms", "CounterexampleReport", "decompose_terms", "assemble_report",
    "build_counterexample", "Verdict", "NonBlochThresholds", "verify_nonbloch", "TraceSample",
    "Theorem2Report", "Theorem1Report", "horocycle_psi", "verify_theorem2", "verify_theorem1",
    "separation_logs", "uniform_separation", "interpolation_derivative_identity", "stolz_contains",
    "PASS", "FAIL", "INSUFFICIENT_LENGTH", "INSUFFICIENT_DEPTH",
]
