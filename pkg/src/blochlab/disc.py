"""Points of the unit disc and the Möbius arithmetic built on them.

A :class:`DiscPoint` stores both Cartesian coordinates and the pair
``(gap_log, theta)`` with ``gap_log = ln(1/(1-|z|))``.  Cartesian values are
exact enough while ``1-|z|`` is above ``1e-8``; past that threshold every
quantity of the form ``1 - conj(a) z`` is assembled from the gaps
``t = exp(-gap_log)`` so that points like ``1 - exp(-90)`` stay usable.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import DomainError
from .logscale import NEG_INF, ZERO, LogComplex, log1mexp, logaddexp

G_SAFE = math.log(1e8)
TWO_PI = 2.0 * math.pi
LOG2 = math.log(2.0)


def normalize_angle(theta: float) -> float:
    """Reduce to ``(-pi, pi]``; ``-pi`` maps to ``pi``."""
    th = math.remainder(theta, TWO_PI)
    if th <= -math.pi:
        th = math.pi
    return th


@dataclass(frozen=True)
class DiscPoint:
    re: float
    im: float
    gap_log: float
    theta: float

    def __post_init__(self):
        g = self.gap_log
        if not (g >= 0.0 and math.isfinite(g)):
            raise DomainError(f"gap_log must be finite and >= 0, got {g!r}")

    @classmethod
    def from_complex(cls, z: complex) -> "DiscPoint":
        z = complex(z)
        r = abs(z)
        if not r < 1.0:
            raise DomainError(f"point {z!r} is not inside the unit disc")
        theta = normalize_angle(math.atan2(z.imag, z.real)) if r > 0.0 else 0.0
        return cls(z.real, z.imag, -math.log1p(-r), theta)

    @classmethod
    def from_gap(cls, gap_log: float, theta: float = 0.0) -> "DiscPoint":
        if not (gap_log >= 0.0 and math.isfinite(gap_log)):
            raise DomainError(f"gap_log must be finite and >= 0, got {gap_log!r}")
        theta = normalize_angle(theta)
        rho = -math.expm1(-gap_log)
        return cls(rho * math.cos(theta), rho * math.sin(theta), float(gap_log), theta)

    @classmethod
    def from_radius(cls, r: float, theta: float = 0.0) -> "DiscPoint":
        if not 0.0 <= r < 1.0:
            raise DomainError(f"radius {r!r} outside [0, 1)")
        return cls.from_gap(-math.log1p(-r), theta)

    @classmethod
    def coerce(cls, z) -> "DiscPoint":
        if isinstance(z, DiscPoint):
            return z
        return cls.from_complex(complex(z))

    # -- derived quantities -------------------------------------------------
    @property
    def z(self) -> complex:
        return complex(self.re, self.im)

    @property
    def t(self) -> float:
        """``1 - |z|``."""
        return math.exp(-self.gap_log)

    @property
    def log_abs(self) -> float:
        return log1mexp(-self.gap_log) if self.gap_log > 0.0 else NEG_INF

    @property
    def log_one_minus_abs2(self) -> float:
        """``log(1 - |z|^2) = log(t (2 - t))``."""
        return -self.gap_log + math.log(2.0 - self.t)

    @property
    def in_gap_regime(self) -> bool:
        return self.gap_log > G_SAFE

    @property
    def is_origin(self) -> bool:
        return self.gap_log == 0.0

    def rotate(self, angle: float) -> "DiscPoint":
        return DiscPoint.from_gap(self.gap_log, self.theta + angle)

    def conj_phase(self) -> complex:
        return complex(math.cos(self.theta), -math.sin(self.theta))

    # -- serialization -------------------------------------------------------
    def to_json(self) -> dict:
        return {"re": self.re, "im": self.im, "gap_log": self.gap_log, "theta": self.theta}

    @classmethod
    def from_json(cls, d: dict) -> "DiscPoint":
        if all(k in d for k in ("re", "im", "gap_log", "theta")):
            # restore exactly what was written
            return cls(float(d["re"]), float(d["im"]), float(d["gap_log"]), float(d["theta"]))
        if "gap_log" in d and "theta" in d:
            return cls.from_gap(float(d["gap_log"]), float(d["theta"]))
        if "re" in d and "im" in d:
            return cls.from_complex(complex(float(d["re"]), float(d["im"])))
        raise DomainError("DiscPoint JSON needs (re, im) or (gap_log, theta)")


@dataclass(frozen=True)
class Horocycle:
    """The circle ``|z - a| = 1 - a`` tangent to the unit circle at 1."""

    a: float

    def __post_init__(self):
        if not 0.0 < self.a < 1.0:
            raise DomainError(f"horocycle parameter must lie in (0, 1), got {self.a!r}")

    @property
    def level(self) -> float:
        """Common value of ``Re((1+z)/(1-z))`` on the circle."""
        return self.a / (1.0 - self.a)

    def psi_for_distance(self, d: float) -> float:
        """Parameter in ``(0, pi]`` of the point with ``|1 - z| = d``."""
        s = d / (2.0 * (1.0 - self.a))
        if not 0.0 < s <= 1.0:
            raise DomainError(f"no point of the horocycle at distance {d!r} from 1")
        return 2.0 * math.asin(s)


@dataclass(frozen=True, eq=False)
class CircleGrid:
    gap_log: float
    thetas: np.ndarray
    refinement_level: int = 0

    def __post_init__(self):
        th = np.asarray(self.thetas, dtype=float)
        if th.ndim != 1 or th.size == 0:
            raise DomainError("CircleGrid needs a nonempty 1-d array of angles")
        if np.any(np.diff(th) <= 0.0):
            raise DomainError("CircleGrid angles must be strictly increasing")
        if th[0] <= -math.pi or th[-1] > math.pi:
            raise DomainError("CircleGrid angles must lie in (-pi, pi]")
        object.__setattr__(self, "thetas", th)

    @classmethod
    def uniform(cls, gap_log: float, n: int, refinement_level: int = 0) -> "CircleGrid":
        # j = 1..n gives (-pi, pi]; 0 is a node whenever n is even
        th = -math.pi + TWO_PI * np.arange(1, n + 1) / n
        th[-1] = math.pi
        if n % 2 == 0:
            th[n // 2 - 1] = 0.0
        return cls(gap_log, th, refinement_level)

    @property
    def r(self) -> float:
        return -math.expm1(-self.gap_log)

    @property
    def t(self) -> float:
        return math.exp(-self.gap_log)

    def points(self) -> np.ndarray:
        return self.r * np.exp(1j * self.thetas)

    def one_minus_z(self) -> np.ndarray:
        return one_minus_polar_array(self.t, self.thetas)

    def one_minus_abs2(self) -> float:
        t = self.t
        return t * (2.0 - t)


# ---------------------------------------------------------------------------
# gap-stable building blocks

def one_minus_polar(w_log: float, delta: float) -> LogComplex:
    """``1 - (1 - w) e^{i delta}`` with ``w = exp(w_log)`` in ``(0, 1]``.

    Uses ``Re = 2 sin^2(delta/2) + w cos(delta)``, ``Im = -(1 - w) sin(delta)``:
    every term is formed without subtracting numbers close to 1.
    """
    sh = math.sin(0.5 * delta)
    if sh == 0.0:
        return LogComplex(1 + 0j, w_log)
    sd = math.sin(delta)
    lq = LOG2 + 2.0 * math.log(abs(sh))
    ls = math.log(abs(sd)) if sd != 0.0 else NEG_INF
    s = max(w_log, lq, ls)
    re = math.exp(lq - s) + math.exp(w_log - s) * math.cos(delta)
    im = 0.0
    if ls != NEG_INF:
        im = -(-math.expm1(w_log)) * math.copysign(math.exp(ls - s), sd)
    return LogComplex.from_complex(complex(re, im)).scale(s)


def one_minus_polar_array(t: float, thetas: np.ndarray) -> np.ndarray:
    """Vector form of :func:`one_minus_polar` for a common gap ``t``."""
    sh = np.sin(0.5 * thetas)
    return (2.0 * sh * sh + t * np.cos(thetas)) - 1j * ((1.0 - t) * np.sin(thetas))


def one_minus(z: DiscPoint) -> LogComplex:
    """``1 - z``."""
    if not z.in_gap_regime:
        return LogComplex.from_complex(1.0 - z.z)
    return one_minus_polar(-z.gap_log, z.theta)


def _log_combined_gap(a: DiscPoint, z: DiscPoint) -> float:
    # 1 - |a||z| = t_a + t_z (1 - t_a)
    return logaddexp(-a.gap_log, -z.gap_log + a.log_abs)


def one_minus_conj_mul(a: DiscPoint, z: DiscPoint, route: str = "auto") -> LogComplex:
    """``1 - conj(a) z``."""
    if route == "cartesian" or (route == "auto" and not (a.in_gap_regime or z.in_gap_regime)):
        return LogComplex.from_complex(1.0 - a.z.conjugate() * z.z)
    return one_minus_polar(_log_combined_gap(a, z), z.theta - a.theta)


def difference(a: DiscPoint, z: DiscPoint, route: str = "auto") -> LogComplex:
    """``a - z``."""
    if route == "cartesian" or (route == "auto" and not (a.in_gap_regime or z.in_gap_regime)):
        return LogComplex.from_complex(a.z - z.z)
    delta = z.theta - a.theta
    if delta == 0.0:
        # same ray: (1 - t_a) - (1 - t_z) = t_z - t_a
        la, lz = -a.gap_log, -z.gap_log
        if la == lz:
            return ZERO
        hi, lo = max(la, lz), min(la, lz)
        mag = hi + log1mexp(lo - hi)
        sign = 1.0 if lz > la else -1.0
        return LogComplex(sign * complex(math.cos(a.theta), math.sin(a.theta)), mag)
    inner = one_minus_polar(-z.gap_log, delta) - LogComplex(1 + 0j, -a.gap_log)
    return inner * LogComplex(complex(math.cos(a.theta), math.sin(a.theta)), 0.0)


def _coerce_pair(a, z):
    return DiscPoint.coerce(a), DiscPoint.coerce(z)


def mobius_log(a, z, route: str = "auto") -> LogComplex:
    """``phi_a(z) = (a - z)/(1 - conj(a) z)`` in log-scaled form."""
    a, z = _coerce_pair(a, z)
    return difference(a, z, route) / one_minus_conj_mul(a, z, route)


def mobius_eval(a, z, route: str = "auto") -> complex:
    """Möbius atom ``phi_a(z)``.

    In the gap regime the modulus can round to 1.0 even though it is < 1;
    use :func:`log_one_minus_rho2` for the distance to the circle.
    """
    return mobius_log(a, z, route).to_complex()


def mobius_deriv_log(a, z, route: str = "auto") -> LogComplex:
    a, z = _coerce_pair(a, z)
    den = one_minus_conj_mul(a, z, route)
    return LogComplex(-1 + 0j, a.log_one_minus_abs2) * den ** -2


def mobius_deriv(a, z, route: str = "auto") -> complex:
    """``phi_a'(z) = (|a|^2 - 1)/(1 - conj(a) z)^2``."""
    return mobius_deriv_log(a, z, route).to_complex()


def pseudo_hyperbolic(z, w) -> float:
    """``rho(z, w) = |phi_z(w)|``; argument order is canonicalized so the
    result is symmetric bit for bit."""
    z, w = _coerce_pair(z, w)
    if (z.gap_log, z.theta) > (w.gap_log, w.theta):
        z, w = w, z
    v = mobius_log(z, w)
    return 0.0 if v.is_zero else min(math.exp(v.log_abs), 1.0)


def log_pseudo_hyperbolic(z, w) -> float:
    z, w = _coerce_pair(z, w)
    if (z.gap_log, z.theta) > (w.gap_log, w.theta):
        z, w = w, z
    return mobius_log(z, w).log_abs


def log_one_minus_rho2(z, w) -> float:
    """``log(1 - rho(z,w)^2) = log(1-|z|^2) + log(1-|w|^2) - 2 log|1 - conj(z) w|``."""
    z, w = _coerce_pair(z, w)
    return z.log_one_minus_abs2 + w.log_one_minus_abs2 - 2.0 * one_minus_conj_mul(z, w).log_abs


def horocycle_point(h: Horocycle | float, psi: float) -> DiscPoint:
    """Point ``a + (1 - a) e^{i psi}`` of the horocycle with stable gap."""
    if not isinstance(h, Horocycle):
        h = Horocycle(float(h))
    if not 0.0 < psi < TWO_PI:
        raise DomainError("psi must lie strictly between 0 and 2*pi (psi = 0 is the point 1)")
    a = h.a
    p = psi if psi <= math.pi else psi - TWO_PI
    s = math.sin(0.5 * p)
    # 1 - |z|^2 = 4 a (1 - a) sin^2(psi/2)
    q = 4.0 * a * (1.0 - a) * s * s
    gap = -math.log(q) + math.log1p(math.sqrt(max(1.0 - q, 0.0)))
    re = a + (1.0 - a) * math.cos(p)
    im = (1.0 - a) * math.sin(p)
    theta = normalize_angle(math.atan2(im, re))
    return DiscPoint(re, im, max(gap, 0.0), theta)


def as_points(values: Sequence) -> list[DiscPoint]:
    return [DiscPoint.coerce(v) for v in values]


def cayley_real_part(z: DiscPoint) -> float:
    """``Re((1+z)/(1-z)) = (1 - |z|^2)/|1 - z|^2``, computed from the gap."""
    x = z.log_one_minus_abs2 - 2.0 * one_minus(z).log_abs
    return math.exp(x) if x < 709.0 else math.inf


__all__ = [
    "G_SAFE", "DiscPoint", "Horocycle", "CircleGrid", "normalize_angle",
    "mobius_eval", "mobius_log", "mobius_deriv", "mobius_deriv_log",
    "pseudo_hyperbolic", "log_pseudo_hyperbolic", "log_one_minus_rho2",
    "horocycle_point", "one_minus", "one_minus_conj_mul", "difference",
    "one_minus_polar", "cayley_real_part", "as_points",
]

