"""Complex numbers carried as ``phase * exp(log_abs)``.

Near the boundary of the disc the moduli we need routinely leave the
double range (``1/(1-r)`` with ``1-r = exp(-2000)``, ``|S(r)| = exp(-1e6)``).
A :class:`LogComplex` keeps a unit-modulus phase and the natural log of the
modulus separately, so products never overflow and sums only lose what a
plain double sum would lose.
"""
from __future__ import annotations

import cmath
import math
from typing import NamedTuple

NEG_INF = float("-inf")


class LogComplex(NamedTuple):
    phase: complex
    log_abs: float

    @classmethod
    def from_complex(cls, w: complex) -> "LogComplex":
        a = abs(w)
        if a == 0.0:
            return ZERO
        if math.isinf(a):
            # rescale before taking the modulus
            s = max(abs(w.real), abs(w.imag))
            w = w / s
            a = abs(w)
            return cls(w / a, math.log(s) + math.log(a))
        return cls(w / a, math.log(a))

    @classmethod
    def polar(cls, log_abs: float, arg: float) -> "LogComplex":
        if log_abs == NEG_INF:
            return ZERO
        return cls(complex(math.cos(arg), math.sin(arg)), log_abs)

    @property
    def is_zero(self) -> bool:
        return self.log_abs == NEG_INF

    def to_complex(self) -> complex:
        if self.is_zero:
            return 0j
        if self.log_abs > 709.0:
            return complex(
                math.copysign(math.inf, self.phase.real) if self.phase.real else 0.0,
                math.copysign(math.inf, self.phase.imag) if self.phase.imag else 0.0,
            )
        return self.phase * math.exp(self.log_abs)

    def arg(self) -> float:
        return cmath.phase(self.phase)

    def __mul__(self, other):  # type: ignore[override]
        if not isinstance(other, LogComplex):
            other = LogComplex.from_complex(complex(other))
        if self.is_zero or other.is_zero:
            return ZERO
        p = self.phase * other.phase
        a = abs(p)
        return LogComplex(p / a, self.log_abs + other.log_abs + math.log(a))

    __rmul__ = __mul__

    def __truediv__(self, other):
        if not isinstance(other, LogComplex):
            other = LogComplex.from_complex(complex(other))
        return self * other.reciprocal()

    def reciprocal(self) -> "LogComplex":
        if self.is_zero:
            raise ZeroDivisionError("reciprocal of zero")
        return LogComplex(self.phase.conjugate(), -self.log_abs)

    def __pow__(self, k: int) -> "LogComplex":  # type: ignore[override]
        if k == 0:
            return ONE
        if self.is_zero:
            if k < 0:
                raise ZeroDivisionError("negative power of zero")
            return ZERO
        p = self.phase ** k
        a = abs(p)
        return LogComplex(p / a, k * self.log_abs + math.log(a))

    def __neg__(self) -> "LogComplex":
        return LogComplex(-self.phase, self.log_abs)

    def __add__(self, other):  # type: ignore[override]
        if not isinstance(other, LogComplex):
            other = LogComplex.from_complex(complex(other))
        if self.is_zero:
            return other
        if other.is_zero:
            return self
        if self.log_abs >= other.log_abs:
            big, small = self, other
        else:
            big, small = other, self
        w = big.phase + small.phase * math.exp(small.log_abs - big.log_abs)
        a = abs(w)
        if a == 0.0:
            return ZERO
        return LogComplex(w / a, big.log_abs + math.log(a))

    __radd__ = __add__

    def __sub__(self, other):
        if not isinstance(other, LogComplex):
            other = LogComplex.from_complex(complex(other))
        return self + (-other)

    def scale(self, log_factor: float) -> "LogComplex":
        """Multiply by the positive real ``exp(log_factor)``."""
        if self.is_zero:
            return ZERO
        return LogComplex(self.phase, self.log_abs + log_factor)


ZERO = LogComplex(0j, NEG_INF)
ONE = LogComplex(1 + 0j, 0.0)


def lsum(terms) -> LogComplex:
    """Sum in order; the caller fixes the order for reproducibility."""
    acc = ZERO
    for t in terms:
        acc = acc + t
    return acc


def logaddexp(x: float, y: float) -> float:
    if x == NEG_INF:
        return y
    if y == NEG_INF:
        return x
    if x < y:
        x, y = y, x
    return x + math.log1p(math.exp(y - x))


def log1mexp(x: float) -> float:
    """``log(1 - exp(x))`` for ``x <= 0``, accurate on both ends."""
    if x >= 0.0:
        return NEG_INF
    if x > -0.6931471805599453:
        return math.log(-math.expm1(x))
    return math.log1p(-math.exp(x))
